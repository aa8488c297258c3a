//! Serde helpers for the JSON wire formats.
//!
//! Complex scalars serialize as `[re, im]`; a matrix serializes row-major as
//! `[[re,im],[re,im],[re,im],[re,im]]` for entries (a, b; c, d). These
//! formats are shared by every file the CLI reads or writes.

pub mod complex {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::{GroupElem, Mat2};
    use num_complex::Complex64;

    #[test]
    fn matrix_round_trip() {
        let g = GroupElem::new(Mat2::new(
            Complex64::new(1.0, 0.25),
            Complex64::new(0.0, -0.5),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.8, 0.1),
        ))
        .unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: GroupElem = serde_json::from_str(&text).unwrap();
        assert!(g.dist(&back) < 1e-15);
        // Row-major [[a],[b],[c],[d]] of [re, im] pairs.
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[0].as_array().unwrap().len(), 2);
    }
}
