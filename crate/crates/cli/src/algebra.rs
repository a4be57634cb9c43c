//! Named constructors and their parameters.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, ensure, Context, Result};
use homlie_core::{Field, FieldSpec, LieAlgebra};

/// Constructor name plus `k=v` parameters, validated before any computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constructor {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

const NAMES: &[&str] = &[
    "abelian",
    "heisenberg",
    "sl2",
    "witt_mod_p",
    "zassenhaus",
    "current",
    "direct_sum",
];

fn allowed(name: &str) -> &'static [&'static str] {
    match name {
        "abelian" => &["n"],
        "witt_mod_p" => &["p"],
        "zassenhaus" => &["n", "p"],
        "current" => &["base", "m"],
        "direct_sum" => &["left", "right"],
        _ => &[],
    }
}

impl Constructor {
    pub fn new(name: &str, params: BTreeMap<String, String>) -> Result<Self> {
        ensure!(
            NAMES.contains(&name),
            "unknown algebra {name:?}; expected one of {}",
            NAMES.join(", ")
        );
        for k in params.keys() {
            ensure!(
                allowed(name).contains(&k.as_str()),
                "algebra {name} takes no parameter {k:?} (allowed: {:?})",
                allowed(name)
            );
        }
        let c = Constructor {
            name: name.to_string(),
            params,
        };
        c.check_types()?;
        Ok(c)
    }

    /// `name` or `name:k` where `k` fills the single integer parameter.
    pub fn parse_nested(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let mut params = BTreeMap::new();
        if let Some(a) = arg {
            let key = match name {
                "abelian" | "zassenhaus" => "n",
                "witt_mod_p" => "p",
                _ => bail!("algebra {name} takes no shorthand argument"),
            };
            params.insert(key.to_string(), a.to_string());
        }
        Self::new(name, params)
    }

    fn int(&self, key: &str) -> Result<Option<u32>> {
        self.params
            .get(key)
            .map(|v| {
                v.parse::<u32>().with_context(|| {
                    format!(
                        "parameter {key} of {} must be a non-negative integer, got {v:?}",
                        self.name
                    )
                })
            })
            .transpose()
    }

    fn required(&self, key: &str) -> Result<u32> {
        self.int(key)?
            .ok_or_else(|| anyhow!("algebra {} requires parameter {key}", self.name))
    }

    fn nested(&self, key: &str) -> Result<Constructor> {
        let v = self
            .params
            .get(key)
            .ok_or_else(|| anyhow!("algebra {} requires parameter {key}", self.name))?;
        Self::parse_nested(v)
    }

    fn check_types(&self) -> Result<()> {
        match self.name.as_str() {
            "abelian" => {
                self.required("n")?;
            }
            "zassenhaus" => {
                ensure!(self.required("n")? >= 1, "zassenhaus requires n >= 1");
                self.int("p")?;
            }
            "witt_mod_p" => {
                self.int("p")?;
            }
            "current" => {
                self.nested("base")?;
                ensure!(self.required("m")? >= 1, "current requires m >= 1");
            }
            "direct_sum" => {
                self.nested("left")?;
                self.nested("right")?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Ground field implied by the parameters, if any.
    pub fn implied_field(&self) -> Result<Option<FieldSpec>> {
        let own = match self.int("p")? {
            Some(p) => Some(FieldSpec::prime(p)?),
            None => None,
        };
        let children: Vec<Constructor> = match self.name.as_str() {
            "current" => vec![self.nested("base")?],
            "direct_sum" => vec![self.nested("left")?, self.nested("right")?],
            _ => vec![],
        };
        let mut field = own;
        for c in children {
            if let Some(f) = c.implied_field()? {
                match field {
                    Some(g) if g != f => bail!("conflicting fields {g} and {f} in {}", self.label()),
                    _ => field = Some(f),
                }
            }
        }
        Ok(field)
    }

    /// Whether the constructor only exists in positive characteristic.
    pub fn needs_prime_field(&self) -> bool {
        match self.name.as_str() {
            "witt_mod_p" | "zassenhaus" => true,
            "current" => self.nested("base").is_ok_and(|c| c.needs_prime_field()),
            "direct_sum" => ["left", "right"]
                .iter()
                .any(|k| self.nested(k).is_ok_and(|c| c.needs_prime_field())),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let args: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, args.join(","))
    }

    pub fn build<T: Field>(&self) -> Result<LieAlgebra<T>> {
        let l = match self.name.as_str() {
            "abelian" => LieAlgebra::abelian(self.required("n")? as usize),
            "heisenberg" => LieAlgebra::heisenberg(),
            "sl2" => LieAlgebra::sl2(),
            "witt_mod_p" => LieAlgebra::witt_mod_p()?,
            "zassenhaus" => LieAlgebra::zassenhaus(self.required("n")?)?,
            "current" => self
                .nested("base")?
                .build::<T>()?
                .current(self.required("m")? as usize)?,
            "direct_sum" => {
                let a = self.nested("left")?.build::<T>()?;
                a.direct_sum(&self.nested("right")?.build::<T>()?)
            }
            other => bail!("unknown algebra {other:?}"),
        };
        Ok(l)
    }
}

/// Parse `k=v` items, each optionally a comma-separated list.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in items {
        for kv in item.as_ref().split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("parameter {kv:?} is not of the form k=v"))?;
            ensure!(
                out.insert(k.trim().to_string(), v.trim().to_string()).is_none(),
                "parameter {k} given twice"
            );
        }
    }
    Ok(out)
}
