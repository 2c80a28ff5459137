use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use coverdepth::codefile::parse_code_file;
use coverdepth::codes::{
    extended_ternary_golay, full_space, hamming, reed_muller_1, reed_solomon, simplex,
    ternary_golay,
};
use coverdepth::coverage::{
    expectation_golay, expectation_hamming, expectation_reed_muller, expectation_simplex,
    mds_lower_bound,
};
use coverdepth::{ExactRational, LinearCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Simplex,
    Hamming,
    Golay3,
    Golay3x,
    Rm1,
    Rs,
    Full,
    File,
}

impl Family {
    const ALL: [Family; 8] = [
        Family::Simplex,
        Family::Hamming,
        Family::Golay3,
        Family::Golay3x,
        Family::Rm1,
        Family::Rs,
        Family::Full,
        Family::File,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Hamming => "hamming",
            Family::Golay3 => "golay3",
            Family::Golay3x => "golay3x",
            Family::Rm1 => "rm1",
            Family::Rs => "rs",
            Family::Full => "full",
            Family::File => "file",
        }
    }

    /// Parameter flags the family takes, in display order.
    pub fn params(self) -> &'static [Param] {
        match self {
            Family::Simplex => &[Param::Q, Param::K],
            Family::Hamming => &[Param::Q, Param::R],
            Family::Golay3 | Family::Golay3x | Family::File => &[],
            Family::Rm1 => &[Param::Q, Param::S],
            Family::Rs => &[Param::Q, Param::N, Param::K],
            Family::Full => &[Param::Q, Param::N],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                format!(
                    "unknown family {s:?} (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Q,
    K,
    R,
    S,
    N,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::Q, Param::K, Param::R, Param::S, Param::N];

    pub fn name(self) -> &'static str {
        match self {
            Param::Q => "q",
            Param::K => "k",
            Param::R => "r",
            Param::S => "s",
            Param::N => "n",
        }
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter {s:?}"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub q: Option<u64>,
    pub k: Option<u64>,
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub n: Option<u64>,
}

impl Params {
    pub fn get(&self, p: Param) -> Option<u64> {
        match p {
            Param::Q => self.q,
            Param::K => self.k,
            Param::R => self.r,
            Param::S => self.s,
            Param::N => self.n,
        }
    }

    pub fn set(&mut self, p: Param, v: u64) {
        let slot = match p {
            Param::Q => &mut self.q,
            Param::K => &mut self.k,
            Param::R => &mut self.r,
            Param::S => &mut self.s,
            Param::N => &mut self.n,
        };
        *slot = Some(v);
    }
}

/// A family with its parameters, or a `.code` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub family: Family,
    pub params: Params,
    pub path: Option<PathBuf>,
}

impl CodeSpec {
    /// Checks that exactly the family's parameters are present.
    pub fn new(family: Family, params: Params, path: Option<PathBuf>) -> Result<Self, String> {
        match (family, &path) {
            (Family::File, None) => return Err("family file needs --code PATH".into()),
            (Family::File, Some(_)) => {}
            (_, Some(_)) => {
                return Err(format!("--code cannot be combined with --family {family}"))
            }
            _ => {}
        }
        let wanted = family.params();
        for p in Param::ALL {
            match (wanted.contains(&p), params.get(p)) {
                (true, None) => return Err(format!("family {family} needs --{}", p.name())),
                (false, Some(_)) => {
                    return Err(format!("family {family} does not take --{}", p.name()))
                }
                _ => {}
            }
        }
        Ok(Self {
            family,
            params,
            path,
        })
    }

    fn p(&self, p: Param) -> u64 {
        self.params.get(p).expect("validated in CodeSpec::new")
    }

    fn size(&self, p: Param) -> Result<usize, String> {
        usize::try_from(self.p(p)).map_err(|_| format!("--{} is too large", p.name()))
    }

    pub fn build(&self) -> Result<LinearCode, String> {
        let code = match self.family {
            Family::Simplex => simplex(self.p(Param::Q), self.size(Param::K)?),
            Family::Hamming => hamming(self.p(Param::Q), self.size(Param::R)?),
            Family::Golay3 => ternary_golay(),
            Family::Golay3x => extended_ternary_golay(),
            Family::Rm1 => reed_muller_1(self.p(Param::Q), self.size(Param::S)?),
            Family::Rs => {
                reed_solomon(self.p(Param::Q), self.size(Param::N)?, self.size(Param::K)?)
            }
            Family::Full => full_space(self.p(Param::Q), self.size(Param::N)?),
            Family::File => {
                let path = self.path.as_ref().expect("validated in CodeSpec::new");
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                return parse_code_file(&text).map_err(|e| format!("{}: {e}", path.display()));
            }
        };
        code.map_err(|e| e.to_string())
    }

    /// Family closed form. Reed-Solomon codes and full spaces are MDS, so
    /// theirs is the lower bound itself.
    pub fn closed_form(&self) -> Option<Result<ExactRational, String>> {
        let value = match self.family {
            Family::Simplex => expectation_simplex(self.p(Param::Q), self.p(Param::K) as usize),
            Family::Hamming => expectation_hamming(self.p(Param::Q), self.p(Param::R) as usize),
            Family::Golay3 => expectation_golay(false),
            Family::Golay3x => expectation_golay(true),
            Family::Rm1 => expectation_reed_muller(self.p(Param::Q), self.p(Param::S) as usize),
            Family::Rs => {
                // building checks the parameters; the bound alone would not
                if let Err(e) = self.build() {
                    return Some(Err(e));
                }
                mds_lower_bound(self.p(Param::N) as usize, self.p(Param::K) as usize)
            }
            Family::Full => {
                if let Err(e) = self.build() {
                    return Some(Err(e));
                }
                let n = self.p(Param::N) as usize;
                mds_lower_bound(n, n)
            }
            Family::File => return None,
        };
        Some(value.map_err(|e| e.to_string()))
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(path) = &self.path {
            return write!(f, "{}", path.display());
        }
        let args: Vec<String> = self
            .family
            .params()
            .iter()
            .map(|&p| format!("{}={}", p.name(), self.p(p)))
            .collect();
        write!(f, "{}({})", self.family, args.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(Param, u64)]) -> Params {
        let mut p = Params::default();
        for &(k, v) in pairs {
            p.set(k, v);
        }
        p
    }

    #[test]
    fn parameter_checks() {
        assert!(CodeSpec::new(Family::Simplex, params(&[(Param::Q, 2)]), None).is_err());
        assert!(CodeSpec::new(Family::Golay3, params(&[(Param::Q, 3)]), None).is_err());
        assert!(CodeSpec::new(Family::File, Params::default(), None).is_err());
        assert!(CodeSpec::new(
            Family::Full,
            params(&[(Param::Q, 2), (Param::N, 3)]),
            Some("x".into())
        )
        .is_err());
        let s = CodeSpec::new(
            Family::Rs,
            params(&[(Param::Q, 7), (Param::N, 7), (Param::K, 3)]),
            None,
        )
        .unwrap();
        assert_eq!(s.to_string(), "rs(q=7,n=7,k=3)");
    }

    #[test]
    fn closed_forms() {
        let s = CodeSpec::new(
            Family::Simplex,
            params(&[(Param::Q, 2), (Param::K, 3)]),
            None,
        )
        .unwrap();
        assert_eq!(s.closed_form().unwrap().unwrap().to_string(), "47/12");
        let bad = CodeSpec::new(
            Family::Rs,
            params(&[(Param::Q, 5), (Param::N, 9), (Param::K, 3)]),
            None,
        )
        .unwrap();
        assert!(bad.closed_form().unwrap().is_err());
        assert_eq!("golay3x".parse::<Family>().unwrap(), Family::Golay3x);
        assert!("golay".parse::<Family>().is_err());
    }
}
