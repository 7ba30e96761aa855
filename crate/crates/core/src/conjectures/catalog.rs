//! Lower intervals `[e, x]` across several groups, grouped into isomorphism
//! classes, for deciding whether a poset is isomorphic to some lower interval.

use std::collections::{BTreeMap, HashMap};

use crate::bruhat::poset_on;
use crate::error::GroupError;
use crate::group::{Family, GroupDescriptor, GroupElement, WeylGroup};
use crate::poset::{are_isomorphic, FinitePoset};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: GroupDescriptor,
    pub top: GroupElement,
    /// Reduced word for `top`.
    pub word: String,
    pub poset: FinitePoset,
}

impl CatalogEntry {
    pub fn provenance(&self) -> String {
        format!("{}:[e,{}]", self.group, self.word)
    }
}

fn entries_for(g: &WeylGroup, length: usize) -> Result<Vec<CatalogEntry>, GroupError> {
    let mut out = Vec::new();
    if length == 0 {
        return Ok(out);
    }
    for x in 0..g.order() {
        if g.length_of_index(x) as usize != length {
            continue;
        }
        let members: Vec<u32> = g.lower_ideal(x).into_iter().map(|y| y as u32).collect();
        let labels = members
            .iter()
            .map(|&y| g.element(y as usize).to_string())
            .collect();
        let top = g.element(x).clone();
        out.push(CatalogEntry {
            group: g.descriptor(),
            word: g.word_string(&top)?,
            top,
            poset: poset_on(g, &members).with_labels(labels),
        });
    }
    Ok(out)
}

/// All lower intervals `[e, x]` with `l(x) = length` in the given groups.
pub fn lower_interval_catalog(
    descriptors: &[GroupDescriptor],
    length: usize,
) -> Result<Vec<CatalogEntry>, GroupError> {
    let mut out = Vec::new();
    for &d in descriptors {
        let g = WeylGroup::new(d)?;
        out.extend(entries_for(&g, length)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CatalogClass {
    pub representative: CatalogEntry,
    /// Provenance of every catalog entry in this class.
    pub members: Vec<String>,
}

type BucketKey = (usize, usize, Vec<usize>);

fn bucket_key(p: &FinitePoset) -> BucketKey {
    (p.len(), p.num_covers(), p.rank_sizes())
}

/// Isomorphism classes of lower intervals of every length up to `max_length`.
#[derive(Clone, Debug)]
pub struct LowerIntervalCatalog {
    groups: Vec<GroupDescriptor>,
    max_length: usize,
    classes: BTreeMap<usize, Vec<CatalogClass>>,
    buckets: HashMap<(usize, BucketKey), Vec<usize>>,
}

impl LowerIntervalCatalog {
    /// `A1..A6`, `B2..B4`, `D4`, `D5`.
    pub fn default_groups() -> Vec<GroupDescriptor> {
        let mut v = Vec::new();
        for r in 1..=6 {
            v.push(GroupDescriptor {
                family: Family::A,
                rank: r,
            });
        }
        for r in 2..=4 {
            v.push(GroupDescriptor {
                family: Family::B,
                rank: r,
            });
        }
        for r in 4..=5 {
            v.push(GroupDescriptor {
                family: Family::D,
                rank: r,
            });
        }
        v
    }

    pub fn build(groups: &[GroupDescriptor], max_length: usize) -> Result<Self, GroupError> {
        let mut cat = LowerIntervalCatalog {
            groups: groups.to_vec(),
            max_length,
            classes: BTreeMap::new(),
            buckets: HashMap::new(),
        };
        for &d in groups {
            let g = WeylGroup::new(d)?;
            for length in 1..=max_length {
                for entry in entries_for(&g, length)? {
                    cat.insert(length, entry);
                }
            }
        }
        Ok(cat)
    }

    fn insert(&mut self, length: usize, entry: CatalogEntry) {
        let key = (length, bucket_key(&entry.poset));
        let classes = self.classes.entry(length).or_default();
        let bucket = self.buckets.entry(key).or_default();
        for &c in bucket.iter() {
            if are_isomorphic(&classes[c].representative.poset, &entry.poset).is_some() {
                classes[c].members.push(entry.provenance());
                return;
            }
        }
        bucket.push(classes.len());
        classes.push(CatalogClass {
            members: vec![entry.provenance()],
            representative: entry,
        });
    }

    pub fn groups(&self) -> &[GroupDescriptor] {
        &self.groups
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Whether lower intervals of this length were enumerated.
    pub fn covers_length(&self, length: usize) -> bool {
        (1..=self.max_length).contains(&length)
    }

    pub fn classes(&self, length: usize) -> &[CatalogClass] {
        self.classes.get(&length).map_or(&[], Vec::as_slice)
    }

    /// A class isomorphic to `p` (whose length is its top rank), with the
    /// bijection from `p` to the class representative.
    pub fn find(&self, p: &FinitePoset) -> Option<(&CatalogClass, Vec<usize>)> {
        let length = p.max_rank();
        let classes = self.classes.get(&length)?;
        let bucket = self.buckets.get(&(length, bucket_key(p)))?;
        bucket.iter().find_map(|&c| {
            are_isomorphic(p, &classes[c].representative.poset).map(|m| (&classes[c], m))
        })
    }
}
