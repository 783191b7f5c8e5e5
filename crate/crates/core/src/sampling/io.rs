//! Binary sample files.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic    "RBMS"            4 bytes
//! version  u8 = 1            1 byte
//! n        u32               nodes per sample
//! M        u64               sample count
//! rows     M × ⌈n/8⌉ bytes   packed as in `SampleSet`
//! ```

use std::fs;
use std::path::Path;

use super::SampleSet;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"RBMS";
pub const VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 4 + 8;

impl SampleSet {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.packed_rows().len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.node_count() as u32).to_le_bytes());
        out.extend_from_slice(&(self.len() as u64).to_le_bytes());
        out.extend_from_slice(self.packed_rows());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            let mut found = [0u8; 4];
            found.copy_from_slice(&bytes[..4]);
            return Err(Error::BadMagic { found });
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::TruncatedHeader {
                expected: HEADER_LEN,
                found: bytes.len(),
            });
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        let n = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes")) as usize;
        let count = u64::from_le_bytes(bytes[9..17].try_into().expect("8 bytes"));
        if n == 0 {
            return Err(Error::InvalidParameter("sample file declares zero nodes".into()));
        }
        let body = &bytes[HEADER_LEN..];
        let expected = count
            .checked_mul(SampleSet::row_bytes_for(n) as u64)
            .ok_or_else(|| Error::InvalidParameter(format!("sample count {count} overflows")))?;
        let found = body.len() as u64;
        if found < expected {
            return Err(Error::TruncatedRows { expected, found });
        }
        if found > expected {
            return Err(Error::TrailingBytes(found - expected));
        }
        SampleSet::from_packed(n, count as usize, body.to_vec())
    }
}

pub fn save(samples: &SampleSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, samples.to_bytes())?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<SampleSet> {
    SampleSet::from_bytes(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> SampleSet {
        SampleSet::from_spins(3, &[[1i8, -1, 1], [-1, -1, -1], [1, 1, 1]]).unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = small().to_bytes();
        assert_eq!(&bytes[..4], b"RBMS");
        assert_eq!(bytes[4], 1);
        assert_eq!(&bytes[5..9], &3u32.to_le_bytes());
        assert_eq!(&bytes[9..17], &3u64.to_le_bytes());
        assert_eq!(&bytes[17..], &[0b1010_0000, 0, 0b1110_0000]);
    }

    #[test]
    fn wrong_magic() {
        let mut bytes = small().to_bytes();
        bytes[0] = b'X';
        assert!(matches!(SampleSet::from_bytes(&bytes), Err(Error::BadMagic { .. })));
    }

    #[test]
    fn wrong_version() {
        let mut bytes = small().to_bytes();
        bytes[4] = 2;
        assert!(matches!(SampleSet::from_bytes(&bytes), Err(Error::UnsupportedVersion(2))));
    }

    #[test]
    fn truncated_header() {
        let bytes = small().to_bytes();
        assert!(matches!(SampleSet::from_bytes(&bytes[..10]), Err(Error::TruncatedHeader { .. })));
        assert!(matches!(SampleSet::from_bytes(&bytes[..2]), Err(Error::TruncatedHeader { .. })));
    }

    #[test]
    fn truncated_rows() {
        let bytes = small().to_bytes();
        assert!(matches!(
            SampleSet::from_bytes(&bytes[..bytes.len() - 1]),
            Err(Error::TruncatedRows { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn trailing_bytes() {
        let mut bytes = small().to_bytes();
        bytes.push(0);
        assert!(matches!(SampleSet::from_bytes(&bytes), Err(Error::TrailingBytes(1))));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.rbms");
        save(&small(), &path).unwrap();
        assert_eq!(load(&path).unwrap(), small());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn bytes_round_trip(n in 1usize..40, rows in proptest::collection::vec(any::<u64>(), 0..50)) {
            let spins: Vec<Vec<i8>> = rows
                .iter()
                .map(|r| (0..n).map(|i| if r >> i & 1 == 1 { 1 } else { -1 }).collect())
                .collect();
            let set = SampleSet::from_spins(n, &spins).unwrap();
            prop_assert_eq!(SampleSet::from_bytes(&set.to_bytes()).unwrap(), set);
        }
    }
}
