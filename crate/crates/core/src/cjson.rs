//! Serde helpers: complex numbers as `[re, im]`.

pub mod one {
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

pub mod list {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let v = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

pub mod pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
        [[v[0].re, v[0].im], [v[1].re, v[1].im]].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Complex64; 2], D::Error> {
        let [[a, b], [c, e]] = <[[f64; 2]; 2]>::deserialize(d)?;
        Ok([Complex64::new(a, b), Complex64::new(c, e)])
    }
}
