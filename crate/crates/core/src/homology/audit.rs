use super::{count_augmentations, Assignment, HomologyError, Presentation};

/// How one relation treats a set of listed assignments and the solutions of
/// the remaining relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationAudit {
    pub name: String,
    /// Residue of the relation at each listed assignment, in listing order.
    pub listed_values: Vec<u64>,
    /// Indices into the listed assignments where the residue is nonzero.
    pub rejects_listed: Vec<usize>,
    /// Count with this relation dropped.
    pub count_without: u64,
    /// Solutions of the other relations that this one rules out.
    pub rejects: Vec<Assignment>,
}

/// Per-relation report over Z/NZ: which listed assignments each relation
/// rejects, and which solutions it removes relative to the others.
pub fn audit_relations(p: &Presentation, n: u64, listed: &[Assignment]) -> Result<Vec<RelationAudit>, HomologyError> {
    if n < 2 {
        return Err(HomologyError::Modulus(n));
    }
    let listed_residues: Vec<Vec<u64>> = listed.iter().map(|a| p.evaluate(n, a)).collect();
    let mut out = Vec::with_capacity(p.relations.len());
    for (ri, r) in p.relations.iter().enumerate() {
        let listed_values: Vec<u64> = listed_residues.iter().map(|res| res[ri]).collect();
        let rejects_listed = listed_values.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, _)| k).collect();
        let rest = p.without_relation(ri);
        let others = count_augmentations(&rest, n)?;
        let rejects = others.solutions.into_iter().filter(|a| p.evaluate(n, a)[ri] != 0).collect();
        out.push(RelationAudit {
            name: r.name.clone(),
            listed_values,
            rejects_listed,
            count_without: others.count,
            rejects,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::RelationsFile;

    #[test]
    fn third_relation_rejects_two_listed_triples() {
        let src = "rel1: u*(1+u) + x - y*x\nrel2: (1+u) + u*y - y*x\nrel3: u*(1+u) + u^-1*x - u^-1*x*y*x\n\
                   expect u=1 x=2 y=2\nexpect u=2 x=0 y=0\nexpect u=2 x=2 y=1\n";
        let f = RelationsFile::parse(src).unwrap();
        let audit = audit_relations(&f.presentation, 3, &f.listed).unwrap();
        assert_eq!(audit[0].rejects_listed, Vec::<usize>::new());
        assert_eq!(audit[1].rejects_listed, Vec::<usize>::new());
        assert_eq!(audit[2].rejects_listed, vec![0, 2]);
        assert_eq!(audit[2].listed_values, vec![2, 0, 2]);
        assert_eq!(audit[2].count_without, 3);
        assert_eq!(audit[2].rejects.len(), 2);
    }
}
