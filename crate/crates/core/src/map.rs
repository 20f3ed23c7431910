//! Total self-maps of a finite space, stored as an image table over point indices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::space::FiniteBMetricSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelfMap {
    images: Vec<usize>,
}

impl SelfMap {
    /// `images[i]` is the index of the image of point `i`.
    pub fn from_indices(space: &FiniteBMetricSpace, images: Vec<usize>) -> Result<Self, MapError> {
        if images.len() != space.len() {
            return Err(MapError::WrongSize {
                expected: space.len(),
                found: images.len(),
            });
        }
        if let Some((from, &to)) = images.iter().enumerate().find(|(_, &t)| t >= space.len()) {
            return Err(MapError::ImageOutOfRange { from, to });
        }
        Ok(SelfMap { images })
    }

    /// Builds a map from `(point, image)` label pairs. Every point must appear
    /// exactly once and every image must be a point of the space.
    pub fn from_pairs<K, V>(
        space: &FiniteBMetricSpace,
        pairs: impl IntoIterator<Item = (K, V)>,
    ) -> Result<Self, MapError>
    where
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut table: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, v) in pairs {
            let (k, v) = (k.as_ref(), v.as_ref());
            let from = space
                .index_of(k)
                .map_err(|_| MapError::UnknownPoint(k.into()))?;
            let to = space.index_of(v).map_err(|_| MapError::UnknownImage {
                from: k.into(),
                to: v.into(),
            })?;
            if table.insert(from, to).is_some() {
                return Err(MapError::DuplicatePoint(k.into()));
            }
        }
        let mut images = Vec::with_capacity(space.len());
        for i in 0..space.len() {
            match table.get(&i) {
                Some(&to) => images.push(to),
                None => return Err(MapError::MissingPoint(space.label(i).into())),
            }
        }
        Ok(SelfMap { images })
    }

    pub fn identity(space: &FiniteBMetricSpace) -> Self {
        SelfMap {
            images: (0..space.len()).collect(),
        }
    }

    pub fn constant(space: &FiniteBMetricSpace, target: usize) -> Result<Self, MapError> {
        Self::from_indices(space, alloc::vec![target; space.len()])
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Conjugates by a relabeling: if `perm[i]` is the old index of new point
    /// `i` (as in [`DistanceMatrix::permuted`](crate::DistanceMatrix::permuted)),
    /// the result acts on new indices the way `self` acts on old ones.
    pub fn conjugated(&self, perm: &[usize]) -> Self {
        let mut inverse = alloc::vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        SelfMap {
            images: perm.iter().map(|&old| inverse[self.images[old]]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    WrongSize { expected: usize, found: usize },
    ImageOutOfRange { from: usize, to: usize },
    UnknownPoint(String),
    UnknownImage { from: String, to: String },
    DuplicatePoint(String),
    MissingPoint(String),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::WrongSize { expected, found } => {
                write!(f, "map has {found} entries, space has {expected} points")
            }
            MapError::ImageOutOfRange { from, to } => {
                write!(f, "image index {to} of point {from} is out of range")
            }
            MapError::UnknownPoint(p) => write!(f, "map entry for unknown point {p:?}"),
            MapError::UnknownImage { from, to } => {
                write!(
                    f,
                    "image {to:?} of point {from:?} is not a point of the space"
                )
            }
            MapError::DuplicatePoint(p) => write!(f, "point {p:?} mapped twice"),
            MapError::MissingPoint(p) => write!(f, "point {p:?} has no image"),
        }
    }
}

impl core::error::Error for MapError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use alloc::vec;

    #[test]
    fn totality_is_enforced() {
        let space = demos::example_a_space();
        assert_eq!(
            SelfMap::from_pairs(&space, [("1", "3"), ("2", "3"), ("3", "3")]),
            Err(MapError::MissingPoint("4".into()))
        );
        assert_eq!(
            SelfMap::from_pairs(&space, [("1", "3"), ("2", "3"), ("3", "3"), ("4", "7")]),
            Err(MapError::UnknownImage {
                from: "4".into(),
                to: "7".into()
            })
        );
        assert_eq!(
            SelfMap::from_pairs(&space, [("9", "3")]),
            Err(MapError::UnknownPoint("9".into()))
        );
        assert_eq!(
            SelfMap::from_pairs(&space, [("1", "3"), ("1", "2")]),
            Err(MapError::DuplicatePoint("1".into()))
        );
        assert_eq!(
            SelfMap::from_indices(&space, vec![0, 1]),
            Err(MapError::WrongSize {
                expected: 4,
                found: 2
            })
        );
        assert_eq!(
            SelfMap::from_indices(&space, vec![0, 1, 2, 4]),
            Err(MapError::ImageOutOfRange { from: 3, to: 4 })
        );
    }

    #[test]
    fn conjugation_respects_relabeling() {
        let space = demos::example_a_space();
        let map = demos::example_map(&space);
        let perm = [3, 0, 2, 1];
        let conj = map.conjugated(&perm);
        for (new, &old) in perm.iter().enumerate() {
            assert_eq!(perm[conj.apply(new)], map.apply(old));
        }
    }
}
