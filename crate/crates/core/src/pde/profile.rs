use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialProfileKind {
    PureKink,
    PerturbedKink,
}

/// `q₀(x) = tanh x + a e^{-(x-c)²/w²}`; the pure kink ignores `a`, `c`, `w`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialProfileSpec {
    pub kind: InitialProfileKind,
    /// `[re, im]`
    #[serde(default, with = "complex_pair")]
    pub amplitude: C64,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "unit")]
    pub width: f64,
}

fn unit() -> f64 {
    1.0
}

mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::C64;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

impl InitialProfileSpec {
    pub fn pure_kink() -> Self {
        Self { kind: InitialProfileKind::PureKink, amplitude: C64::new(0.0, 0.0), center: 0.0, width: 1.0 }
    }

    pub fn perturbed_kink(amplitude: C64, center: f64, width: f64) -> Self {
        Self { kind: InitialProfileKind::PerturbedKink, amplitude, center, width }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width > 0.0) || !self.width.is_finite() {
            return Err(Error::InvalidInput(format!("profile width must be positive, got {}", self.width)));
        }
        if !self.center.is_finite() || !self.amplitude.re.is_finite() || !self.amplitude.im.is_finite() {
            return Err(Error::InvalidInput("profile parameters must be finite".into()));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> C64 {
        let kink = C64::from(x.tanh());
        match self.kind {
            InitialProfileKind::PureKink => kink,
            InitialProfileKind::PerturbedKink => {
                let u = (x - self.center) / self.width;
                kink + self.amplitude * (-u * u).exp()
            }
        }
    }

    /// Half-width beyond which the bump is below `1e-16`.
    pub fn support_radius(&self) -> f64 {
        match self.kind {
            InitialProfileKind::PureKink => 0.0,
            InitialProfileKind::PerturbedKink => {
                let a = self.amplitude.norm();
                if a <= 1e-16 {
                    0.0
                } else {
                    self.center.abs() + self.width * (a / 1e-16).ln().sqrt()
                }
            }
        }
    }
}
