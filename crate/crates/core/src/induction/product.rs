use crate::arrangement::Multiarrangement;

/// One block of a product decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Ambient coordinates of the block, ascending.
    pub coords: Vec<usize>,
    /// The factor in `coords.len()` variables.
    pub multiarrangement: Multiarrangement,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Splits into minimal coordinate blocks such that every form lives on one block.
/// Untouched coordinates come out as empty one-dimensional factors.
pub fn product_split(m: &Multiarrangement) -> Vec<Factor> {
    let m = m.normalized();
    let dim = m.dim();
    let mut parent: Vec<usize> = (0..dim).collect();
    for f in m.forms() {
        let support: Vec<usize> = f.support().collect();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; dim];
    for i in 0..dim {
        let r = find(&mut parent, i);
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[r]].push(i);
    }
    blocks
        .into_iter()
        .map(|coords| {
            let pairs = m
                .iter()
                .filter_map(|(f, v)| f.project(&coords).map(|g| (g, v)))
                .collect();
            Factor {
                multiarrangement: Multiarrangement::from_pairs(coords.len(), pairs).unwrap(),
                coords,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::braid_constant;

    #[test]
    fn braid_does_not_split() {
        let parts = product_split(&braid_constant(3, 2));
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].coords, vec![0, 1, 2]);
    }

    #[test]
    fn disjoint_supports_split() {
        let m = Multiarrangement::from_raw(4, &[vec![1, -1, 0, 0], vec![0, 0, 1, -1]], &[3, 2]).unwrap();
        let parts = product_split(&m);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].coords, vec![0, 1]);
        assert_eq!(parts[1].multiarrangement.mults(), &[2]);
        assert_eq!(parts[1].multiarrangement.forms()[0].coeffs(), &[1, -1]);
    }

    #[test]
    fn empty_splits_into_points() {
        let parts = product_split(&Multiarrangement::empty(4));
        assert_eq!(parts.len(), 4);
        assert!(parts
            .iter()
            .all(|p| p.coords.len() == 1 && p.multiarrangement.is_empty()));
    }

    #[test]
    fn untouched_coordinate_is_its_own_factor() {
        let m = braid_constant(3, 1).embedded(&[0, 1, 2], 4);
        let parts = product_split(&m);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].coords, vec![3]);
    }
}
