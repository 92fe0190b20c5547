//! Byte-exact dump of a [`DistanceField`].
//!
//! ```text
//! offset  size  field
//!      0     4  magic "CSLD"
//!      4     2  format version, little-endian (currently 1)
//!      6     1  n
//!      7     1  generator kind: 0 = adjacent, 1 = cyclic
//!      8     8  source coset index, little-endian
//!     16  (n-1)!  distances in coset-index order, 0xFF = unreached
//! ```

use std::io::{self, Read, Write};

use crate::cosets::{coset_count, CosetIndex};

use super::{DistanceField, GeneratorKind, MAX_BFS_N};

pub const DUMP_MAGIC: [u8; 4] = *b"CSLD";
pub const DUMP_VERSION: u16 = 1;
pub const DUMP_HEADER_LEN: usize = 16;

fn invalid(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

impl DistanceField {
    pub fn header_bytes(&self) -> [u8; DUMP_HEADER_LEN] {
        let mut header = [0u8; DUMP_HEADER_LEN];
        header[..4].copy_from_slice(&DUMP_MAGIC);
        header[4..6].copy_from_slice(&DUMP_VERSION.to_le_bytes());
        header[6] = self.n as u8;
        header[7] = match self.kind {
            GeneratorKind::Adjacent => 0,
            GeneratorKind::Cyclic => 1,
        };
        header[8..16].copy_from_slice(&self.source.0.to_le_bytes());
        header
    }

    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(&self.header_bytes())?;
        out.write_all(&self.dist)?;
        out.flush()
    }

    pub fn read_dump<R: Read>(mut input: R) -> io::Result<Self> {
        let mut header = [0u8; DUMP_HEADER_LEN];
        input.read_exact(&mut header)?;
        if header[..4] != DUMP_MAGIC {
            return Err(invalid("not a distance-field dump (bad magic)"));
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != DUMP_VERSION {
            return Err(invalid(format!("unsupported dump version {version}")));
        }
        let n = header[6] as usize;
        if n == 0 || n > MAX_BFS_N {
            return Err(invalid(format!("n = {n} out of range")));
        }
        let kind = match header[7] {
            0 => GeneratorKind::Adjacent,
            1 => GeneratorKind::Cyclic,
            other => return Err(invalid(format!("unknown generator kind {other}"))),
        };
        let source = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes"));
        let count = coset_count(n);
        if source >= count {
            return Err(invalid(format!("source {source} out of range")));
        }
        let mut dist = vec![0u8; count as usize];
        input.read_exact(&mut dist)?;
        let mut rest = [0u8; 1];
        if input.read(&mut rest)? != 0 {
            return Err(invalid("trailing bytes after distance array"));
        }
        Ok(DistanceField {
            n,
            kind,
            source: CosetIndex(source),
            dist,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schreier::{bfs, GeneratorSet, SearchConfig};

    #[test]
    fn layout_n4() {
        let field = bfs(
            &GeneratorSet::adjacent(4),
            CosetIndex(0),
            &SearchConfig::with_workers(1),
        )
        .unwrap();
        let mut bytes = Vec::new();
        field.write_dump(&mut bytes).unwrap();
        assert_eq!(
            &bytes[..16],
            &[b'C', b'S', b'L', b'D', 1, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0]
        );
        // cosets in index order: 1234, 1243, 1324, 1342, 1423, 1432
        assert_eq!(&bytes[16..], &[0, 1, 1, 1, 2, 2]);
        assert_eq!(DistanceField::read_dump(&bytes[..]).unwrap(), field);
    }

    #[test]
    fn round_trip_and_rejects_garbage() {
        let field = bfs(
            &GeneratorSet::cyclic(6),
            CosetIndex(100),
            &SearchConfig::with_workers(1),
        )
        .unwrap();
        let mut bytes = Vec::new();
        field.write_dump(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 16 + 120);
        assert_eq!(DistanceField::read_dump(&bytes[..]).unwrap(), field);

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(DistanceField::read_dump(&bad[..]).is_err());
        let mut long = bytes.clone();
        long.push(0);
        assert!(DistanceField::read_dump(&long[..]).is_err());
        assert!(DistanceField::read_dump(&bytes[..20]).is_err());
    }
}
