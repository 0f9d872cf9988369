use num_complex::Complex64;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::hermitian::{CMat, HermitianMatrix, PdMatrix};

/// JSON shape of a dense matrix: row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMat> for MatrixJson {
    fn from(m: &CMat) -> Self {
        let rows = m.nrows();
        let cols = m.ncols();
        let re = (0..rows).map(|r| (0..cols).map(|c| m[(r, c)].re).collect()).collect();
        let im = (0..rows).map(|r| (0..cols).map(|c| m[(r, c)].im).collect()).collect();
        Self { n: rows, re, im }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CMat, String> {
        let n = self.n;
        let shape_ok = self.re.len() == n
            && self.im.len() == n
            && self.re.iter().chain(&self.im).all(|row| row.len() == n);
        if !shape_ok {
            return Err(format!("matrix payload is not {n}x{n}"));
        }
        Ok(CMat::from_fn(n, n, |r, c| Complex64::new(self.re[r][c], self.im[r][c])))
    }
}

fn serialize_cmat<S: Serializer>(m: &CMat, s: S) -> Result<S::Ok, S::Error> {
    MatrixJson::from(m).serialize(s)
}

fn deserialize_cmat<'de, D: Deserializer<'de>>(d: D) -> Result<CMat, D::Error> {
    MatrixJson::deserialize(d)?.to_matrix().map_err(de::Error::custom)
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_cmat(self.as_matrix(), s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        HermitianMatrix::new(deserialize_cmat(d)?).map_err(de::Error::custom)
    }
}

impl Serialize for PdMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_cmat(self.as_matrix(), s)
    }
}

impl<'de> Deserialize<'de> for PdMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PdMatrix::from_matrix(deserialize_cmat(d)?).map_err(de::Error::custom)
    }
}
