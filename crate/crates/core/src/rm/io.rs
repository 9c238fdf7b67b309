//! On-disk formats: packed received words with a JSON sidecar, and JSON
//! syndrome files.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CodeParams, ReceivedWord, RmError, Syndrome};

/// `{"m": .., "r": .., "p": ..}` stored next to a word file as `<path>.json`.
pub type Sidecar = CodeParams;

pub fn sidecar_path(word_path: &Path) -> PathBuf {
    let mut s = word_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn read_sidecar(word_path: &Path) -> Result<Sidecar, RmError> {
    let text = std::fs::read_to_string(sidecar_path(word_path))?;
    let params: CodeParams = serde_json::from_str(&text)?;
    params.validate()?;
    Ok(params)
}

pub fn write_sidecar(word_path: &Path, params: &CodeParams) -> Result<(), RmError> {
    std::fs::write(sidecar_path(word_path), serde_json::to_string(params)?)?;
    Ok(())
}

fn check_byte_symbols(params: &CodeParams) -> Result<(), RmError> {
    if params.p > 256 {
        return Err(RmError::Params(format!(
            "word files hold one byte per symbol; p = {} does not fit",
            params.p
        )));
    }
    Ok(())
}

/// Bytes of a word file of the given parameters.
pub fn word_file_len(params: &CodeParams) -> u64 {
    if params.p == 2 {
        params.n().div_ceil(8)
    } else {
        params.n()
    }
}

/// `F_2`: packed bits, point `i` at bit `i % 8` of byte `i / 8`. Otherwise
/// one byte per symbol.
pub fn write_word<W: Write>(mut out: W, word: &ReceivedWord) -> Result<(), RmError> {
    let params = word.params();
    if let Some(words) = word.packed() {
        let nbytes = word_file_len(params) as usize;
        let mut bytes = Vec::with_capacity(nbytes);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        bytes.truncate(nbytes);
        out.write_all(&bytes)?;
    } else {
        check_byte_symbols(params)?;
        let bytes: Vec<u8> = word.symbols().into_iter().map(|s| s as u8).collect();
        out.write_all(&bytes)?;
    }
    Ok(())
}

pub fn read_word<R: Read>(params: CodeParams, mut input: R) -> Result<ReceivedWord, RmError> {
    params.check_word_len()?;
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let expected = word_file_len(&params);
    if bytes.len() as u64 != expected {
        let got = if params.p == 2 {
            bytes.len() as u64 * 8
        } else {
            bytes.len() as u64
        };
        return Err(RmError::StreamLength {
            expected: params.n(),
            got,
        });
    }
    if params.p == 2 {
        let words = bytes
            .chunks(8)
            .map(|c| {
                let mut b = [0u8; 8];
                b[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(b)
            })
            .collect();
        ReceivedWord::from_packed(params, words)
    } else {
        check_byte_symbols(&params)?;
        let symbols: Vec<u64> = bytes.into_iter().map(u64::from).collect();
        ReceivedWord::from_symbols(params, &symbols)
    }
}

/// `{"params": {"m": .., "r": .., "p": ..}, "entries": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeFile {
    pub params: CodeParams,
    pub entries: Vec<u64>,
}

impl From<&Syndrome> for SyndromeFile {
    fn from(s: &Syndrome) -> Self {
        Self {
            params: *s.params(),
            entries: s.entries().to_vec(),
        }
    }
}

impl TryFrom<SyndromeFile> for Syndrome {
    type Error = RmError;

    fn try_from(f: SyndromeFile) -> Result<Self, RmError> {
        Syndrome::new(f.params, f.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn word_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, p) in [(3usize, 2u64), (7, 2), (4, 3)] {
            let params = CodeParams::new(m, 0, p).unwrap();
            let s: Vec<u64> = (0..params.n()).map(|_| rng.gen_range(0..p)).collect();
            let w = ReceivedWord::from_symbols(params, &s).unwrap();
            let mut bytes = Vec::new();
            write_word(&mut bytes, &w).unwrap();
            assert_eq!(bytes.len() as u64, word_file_len(&params));
            assert_eq!(read_word(params, bytes.as_slice()).unwrap(), w);
        }
    }

    #[test]
    fn packed_bit_order() {
        let params = CodeParams::binary(4, 1).unwrap();
        let mut w = ReceivedWord::zero(params).unwrap();
        w.set(0, 1);
        w.set(9, 1);
        let mut bytes = Vec::new();
        write_word(&mut bytes, &w).unwrap();
        assert_eq!(bytes, vec![0b0000_0001, 0b0000_0010]);
    }

    #[test]
    fn wrong_length_rejected() {
        let params = CodeParams::binary(4, 1).unwrap();
        assert!(read_word(params, &[0u8; 3][..]).is_err());
    }

    #[test]
    fn syndrome_json_shape() {
        let params = CodeParams::binary(2, 0).unwrap();
        let s = Syndrome::new(params, vec![0, 1, 1]).unwrap();
        let json = serde_json::to_string(&SyndromeFile::from(&s)).unwrap();
        assert_eq!(json, r#"{"params":{"m":2,"r":0,"p":2},"entries":[0,1,1]}"#);
        let back: SyndromeFile = serde_json::from_str(&json).unwrap();
        assert_eq!(Syndrome::try_from(back).unwrap(), s);
    }

    #[test]
    fn sidecar_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("word.bin");
        let params = CodeParams::new(6, 1, 3).unwrap();
        write_sidecar(&path, &params).unwrap();
        assert_eq!(read_sidecar(&path).unwrap(), params);
        assert!(sidecar_path(&path).ends_with("word.bin.json"));
    }
}
