use alloc::vec::Vec;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub group: PermGroup,
    pub subgroup: PermGroup,
    pub degree: usize,
    /// Image of each generator of `group`, in generator order.
    pub images_of_generators: Vec<Permutation>,
    /// `coset_reps[i]` represents coset `i`; coset 0 is the subgroup itself.
    pub coset_reps: Vec<Permutation>,
}

impl CosetAction {
    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.images_of_generators.clone()).unwrap()
    }

    /// Generators of the group acting simultaneously on its own points
    /// `0..n` and on the cosets `n..n+degree`.
    pub fn combined_generators(&self) -> Vec<Permutation> {
        let n = self.group.degree();
        self.group
            .generators()
            .iter()
            .zip(&self.images_of_generators)
            .map(|(g, c)| {
                let mut images: Vec<usize> = g.images().iter().map(|&x| x as usize).collect();
                images.extend(c.images().iter().map(|&x| x as usize + n));
                Permutation::from_images(images).unwrap()
            })
            .collect()
    }

    pub fn combined_group(&self) -> PermGroup {
        PermGroup::new(self.group.degree() + self.degree, self.combined_generators()).unwrap()
    }

    /// Kernel of the action, as a subgroup of `group`.
    pub fn kernel(&self) -> PermGroup {
        let n = self.group.degree();
        let combined = self.combined_group();
        let cosets: Vec<usize> = (n..n + self.degree).collect();
        let stab = combined.pointwise_stabilizer(&cosets).unwrap();
        let gens: Vec<Permutation> = stab
            .generators()
            .iter()
            .map(|g| {
                Permutation::from_images(g.images()[..n].iter().map(|&x| x as usize).collect())
                    .unwrap()
            })
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn is_faithful(&self) -> bool {
        self.image_group().order() == self.group.order()
    }
}

/// Action of `group` by right multiplication on the right cosets of `subgroup`.
pub fn coset_action(group: &PermGroup, subgroup: &PermGroup) -> Result<CosetAction> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::NotSubgroup);
    }
    let n = group.degree();
    let mut reps = alloc::vec![Permutation::identity(n)];
    let mut rep_invs = alloc::vec![Permutation::identity(n)];
    let gens = group.generators();
    let mut images: Vec<Vec<usize>> = alloc::vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, s) in gens.iter().enumerate() {
            let y = reps[i].then(s);
            let found = rep_invs
                .iter()
                .position(|ri| subgroup.contains(&y.then(ri)));
            let j = match found {
                Some(j) => j,
                None => {
                    rep_invs.push(y.inverse());
                    reps.push(y);
                    reps.len() - 1
                }
            };
            images[gi].push(j);
        }
        i += 1;
    }
    let degree = reps.len();
    let images_of_generators = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetAction {
        group: group.clone(),
        subgroup: subgroup.clone(),
        degree,
        images_of_generators,
        coset_reps: reps,
    })
}

/// Largest subgroup of `h` normal in `g`: the kernel of the coset action.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    Ok(coset_action(g, h)?.kernel())
}
