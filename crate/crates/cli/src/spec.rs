//! Module specs from inline JSON, a file, or flags.

use std::fs;
use std::path::Path;

use clap::Args;
use dpn::modrep::ZooParams;

use crate::CliError;

/// Flag form of a module spec. Flags override fields of `--spec`.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    /// Module spec: inline JSON object or path to a JSON file.
    #[arg(long)]
    pub spec: Option<String>,
    /// Family name, see `zoo-list`.
    #[arg(long)]
    pub family: Option<String>,
    /// Characteristic.
    #[arg(long, env = "DPN_P")]
    pub p: Option<u32>,
    /// Number of variables.
    #[arg(long)]
    pub n: Option<usize>,
    /// Ground field, `Fp` or `Fp(t)`.
    #[arg(long, env = "DPN_FIELD")]
    pub field: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',')]
    pub ks: Option<Vec<u32>>,
    /// Minimal polynomial; repeat once per variable.
    #[arg(long)]
    pub g: Vec<String>,
    /// Growth exponent `a/b`.
    #[arg(long)]
    pub r: Option<String>,
    /// Number of breakpoints.
    #[arg(long)]
    pub count: Option<usize>,
    /// Left-ideal generator for `cyclic`; repeatable.
    #[arg(long = "gen")]
    pub generators: Vec<String>,
    /// Reduction buffer for `cyclic`.
    #[arg(long = "B")]
    pub buffer: Option<usize>,
}

/// Inline JSON when it looks like an object, otherwise a file path.
fn load(spec: &str) -> Result<ZooParams, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(Path::new(spec)).map_err(|e| CliError::Usage(format!("cannot read spec {spec:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad module spec: {e}")))
}

impl SpecArgs {
    /// Merge the spec and the flags. `level` becomes `N` for cyclic
    /// families that do not set it.
    pub fn params(&self, level: Option<usize>) -> Result<ZooParams, CliError> {
        let mut out = match &self.spec {
            Some(s) => load(s)?,
            None => ZooParams::default(),
        };
        if let Some(f) = &self.family {
            out.family = f.clone();
        }
        macro_rules! set {
            ($($field:ident),*) => {$(
                if self.$field.is_some() {
                    out.$field = self.$field.clone();
                }
            )*};
        }
        set!(p, n, field, k, s, t, ks, r, count, buffer);
        if !self.g.is_empty() {
            out.g = Some(self.g.clone());
        }
        if !self.generators.is_empty() {
            out.generators = Some(self.generators.clone());
        }
        if out.family.is_empty() {
            return Err(CliError::Usage("no module given; pass --family or --spec".into()));
        }
        if out.p.is_none() {
            return Err(CliError::Usage("no characteristic given; pass --p or set DPN_P".into()));
        }
        if out.level.is_none() {
            out.level = level;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_json() {
        let a = SpecArgs {
            spec: Some(r#"{"family": "Pn", "p": 2, "n": 3}"#.into()),
            n: Some(1),
            ..SpecArgs::default()
        };
        let p = a.params(None).unwrap();
        assert_eq!((p.family.as_str(), p.p, p.n), ("Pn", Some(2), Some(1)));
    }

    #[test]
    fn missing_pieces_are_usage_errors() {
        assert!(matches!(SpecArgs::default().params(None), Err(CliError::Usage(_))));
        let a = SpecArgs { family: Some("Pn".into()), ..SpecArgs::default() };
        assert!(matches!(a.params(None), Err(CliError::Usage(_))));
        let a = SpecArgs { spec: Some(r#"{"family": "Pn", "q": 1}"#.into()), ..SpecArgs::default() };
        assert!(matches!(a.params(None), Err(CliError::Usage(_))));
    }
}
