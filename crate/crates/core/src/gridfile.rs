//! `PSPC` sampled-grid files.
//!
//! Little-endian throughout:
//!
//! | bytes | content |
//! |-------|---------|
//! | 4     | magic `PSPC` |
//! | u32   | version (1) |
//! | u32   | `n` |
//! | u32   | `q` |
//! | n × (u32, u32) | radial and angular node counts per axis |
//! | rest  | samples as `(re, im)` f64 pairs |
//!
//! Sample order: variable 0 slowest; within a variable, radial index slow
//! and angular index fast. Radial node `i` is the `i`-th ascending
//! Gauss–Legendre node mapped to `[0, a_k]`; angular node `l` is at
//! `θ = 2πl / N_θ`. Radii and the tuple `J` are not stored.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"PSPC";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct GridFile {
    pub n: u32,
    pub q: u32,
    /// `(radial, angular)` node counts per axis.
    pub axes: Vec<(u32, u32)>,
    pub samples: Vec<Complex64>,
}

impl GridFile {
    pub fn expected_samples(&self) -> usize {
        self.axes
            .iter()
            .map(|&(r, t)| r as usize * t as usize)
            .product()
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        if self.axes.len() != self.n as usize {
            return Err(Error::InvalidArgument(format!(
                "{} axes for n = {}",
                self.axes.len(),
                self.n
            )));
        }
        if self.samples.len() != self.expected_samples() {
            return Err(Error::InvalidArgument(format!(
                "{} samples, header implies {}",
                self.samples.len(),
                self.expected_samples()
            )));
        }
        let mut buf = Vec::with_capacity(16 + 8 * self.axes.len() + 16 * self.samples.len());
        buf.extend_from_slice(&MAGIC);
        for v in [VERSION, self.n, self.q] {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        for &(r, t) in &self.axes {
            buf.extend_from_slice(&r.to_le_bytes());
            buf.extend_from_slice(&t.to_le_bytes());
        }
        for s in &self.samples {
            buf.extend_from_slice(&s.re.to_le_bytes());
            buf.extend_from_slice(&s.im.to_le_bytes());
        }
        w.write_all(&buf).map_err(io_error)
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes).map_err(io_error)?;
        let mut cur = Cursor { bytes: &bytes, pos: 0 };
        if cur.take(4)? != MAGIC {
            return Err(Error::InvalidArgument("not a PSPC grid file (bad magic)".into()));
        }
        let version = cur.u32()?;
        if version != VERSION {
            return Err(Error::InvalidArgument(format!("unsupported PSPC version {version}")));
        }
        let n = cur.u32()?;
        let q = cur.u32()?;
        if n == 0 || n > 16 {
            return Err(Error::InvalidArgument(format!("implausible dimension n = {n}")));
        }
        let axes = (0..n)
            .map(|_| Ok((cur.u32()?, cur.u32()?)))
            .collect::<Result<Vec<_>>>()?;
        let count = axes
            .iter()
            .try_fold(1usize, |acc, &(r, t)| acc.checked_mul(r as usize)?.checked_mul(t as usize))
            .ok_or_else(|| Error::InvalidArgument("sample count overflows".into()))?;
        let remaining = bytes.len() - cur.pos;
        if count.checked_mul(16) != Some(remaining) {
            return Err(Error::InvalidArgument(format!(
                "header implies {count} samples but {remaining} bytes follow"
            )));
        }
        let samples = (0..count)
            .map(|_| Ok(Complex64::new(cur.f64()?, cur.f64()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFile { n, q, axes, samples })
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("I/O error: {e}"))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::InvalidArgument("truncated PSPC file".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}
