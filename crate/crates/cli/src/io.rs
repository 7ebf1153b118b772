//! JSON wire formats. Rationals travel as `"p/q"` strings and coefficient
//! arrays are in ascending powers of `z`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use specfact::reduction::ReductionTrace;
use specfact::scalar::rat::{format_rat, parse_rat};
use specfact::{ConstMatrix, LPoly, Matrix, Poly, Rat, RatFun, RatMatrix, RegionPair, RegionSpec, Side, SmithMcMillan};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<EntryFile>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryFile {
    Laurent {
        lpoly: LPolyFile,
    },
    Ratio {
        num: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        den: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LPolyFile {
    pub minpow: i64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideName {
    Inside,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFragment {
    pub default: SideName,
    #[serde(default)]
    pub closed: bool,
    #[serde(default)]
    pub flips: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile {
    pub poles: RegionFragment,
    pub zeros: RegionFragment,
}

#[derive(Debug, Serialize)]
pub struct SmithMcMillanFile {
    pub c: MatrixFile,
    pub d: MatrixFile,
    pub f: MatrixFile,
    pub eps: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct StepFile {
    pub kernel_vector: Vec<String>,
    pub pivot: usize,
    pub degrees_before: Vec<i64>,
    pub degrees_after: Vec<i64>,
    pub omega: MatrixFile,
    pub omega_inv: MatrixFile,
}

#[derive(Debug, Serialize)]
pub struct TraceFile {
    pub psi_sequence: Vec<MatrixFile>,
    pub steps: Vec<StepFile>,
    pub psi_final: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
    pub dc: Vec<String>,
    pub c: Vec<Vec<String>>,
    pub c_exact: bool,
    pub det: String,
    pub degree_bound: i64,
}

fn coeff_strings(c: &[Rat]) -> Vec<String> {
    c.iter().map(format_rat).collect()
}

fn parse_coeffs(c: &[String]) -> Result<Vec<Rat>, String> {
    c.iter()
        .map(|s| parse_rat(s).ok_or_else(|| format!("bad rational {s:?}")))
        .collect()
}

fn const_strings(m: &ConstMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rat(&m[(i, j)])).collect())
        .collect()
}

impl EntryFile {
    pub fn from_ratfun(f: &RatFun) -> Self {
        if f.den().is_one() {
            return EntryFile::Ratio {
                num: coeff_strings(f.num().coeffs()),
                den: None,
            };
        }
        match f.to_lpoly() {
            Some(p) => EntryFile::Laurent {
                lpoly: LPolyFile {
                    minpow: p.minpow(),
                    coeffs: coeff_strings(p.coeffs()),
                },
            },
            None => EntryFile::Ratio {
                num: coeff_strings(f.num().coeffs()),
                den: Some(coeff_strings(f.den().coeffs())),
            },
        }
    }

    pub fn to_ratfun(&self) -> Result<RatFun, String> {
        match self {
            EntryFile::Laurent { lpoly } => Ok(RatFun::from_lpoly(&LPoly::new(
                lpoly.minpow,
                parse_coeffs(&lpoly.coeffs)?,
            ))),
            EntryFile::Ratio { num, den } => {
                let num = Poly::new(parse_coeffs(num)?);
                let den = match den {
                    Some(d) => Poly::new(parse_coeffs(d)?),
                    None => Poly::one(),
                };
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(RatFun::new(num, den))
            }
        }
    }
}

impl MatrixFile {
    pub fn from_matrix(g: &RatMatrix) -> Self {
        MatrixFile {
            rows: g.rows(),
            cols: g.cols(),
            entries: (0..g.rows())
                .map(|i| (0..g.cols()).map(|j| EntryFile::from_ratfun(&g[(i, j)])).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<RatMatrix, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix must have at least one row and one column".into());
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(format!("entries do not form a {}x{} grid", self.rows, self.cols));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                data.push(e.to_ratfun().map_err(|m| format!("entry ({i}, {j}): {m}"))?);
            }
        }
        Ok(Matrix::from_vec(self.rows, self.cols, data))
    }
}

impl RegionFragment {
    pub fn from_spec(s: &RegionSpec) -> Self {
        RegionFragment {
            default: match s.default_side {
                Side::Inside => SideName::Inside,
                Side::Outside => SideName::Outside,
            },
            closed: s.closed,
            flips: s.flips.iter().map(|f| coeff_strings(f.coeffs())).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<RegionSpec, String> {
        let side = match self.default {
            SideName::Inside => Side::Inside,
            SideName::Outside => Side::Outside,
        };
        let flips = self
            .flips
            .iter()
            .map(|c| parse_coeffs(c).map(Poly::new))
            .collect::<Result<Vec<_>, _>>()?;
        RegionSpec::new(side, self.closed, flips).map_err(|e| e.to_string())
    }
}

impl RegionFile {
    pub fn from_pair(r: &RegionPair) -> Self {
        RegionFile {
            poles: RegionFragment::from_spec(&r.poles),
            zeros: RegionFragment::from_spec(&r.zeros),
        }
    }

    pub fn to_pair(&self) -> Result<RegionPair, String> {
        Ok(RegionPair::new(self.poles.to_spec()?, self.zeros.to_spec()?))
    }
}

impl SmithMcMillanFile {
    pub fn new(s: &SmithMcMillan) -> Self {
        SmithMcMillanFile {
            c: MatrixFile::from_matrix(&s.c.to_ratfun()),
            d: MatrixFile::from_matrix(&s.d_matrix()),
            f: MatrixFile::from_matrix(&s.f.to_ratfun()),
            eps: s.eps.iter().map(|p| coeff_strings(p.coeffs())).collect(),
            psi: s.psi.iter().map(|p| coeff_strings(p.coeffs())).collect(),
        }
    }
}

impl TraceFile {
    pub fn new(t: &ReductionTrace) -> Self {
        TraceFile {
            psi_sequence: t
                .psi_sequence
                .iter()
                .map(|p| MatrixFile::from_matrix(&p.to_ratfun()))
                .collect(),
            steps: t
                .steps
                .iter()
                .map(|s| StepFile {
                    kernel_vector: coeff_strings(&s.kernel_vector),
                    pivot: s.pivot,
                    degrees_before: s.degrees_before.clone(),
                    degrees_after: s.degrees_after.clone(),
                    omega: MatrixFile::from_matrix(&s.omega.to_ratfun()),
                    omega_inv: MatrixFile::from_matrix(&s.omega_inv.to_ratfun()),
                })
                .collect(),
            psi_final: const_strings(&t.psi_final),
            l: const_strings(&t.l),
            dc: coeff_strings(&t.dc),
            c: const_strings(&t.c),
            c_exact: t.c_exact,
            det: format_rat(&t.det),
            degree_bound: t.degree_bound,
        }
    }
}

/// Pretty JSON with a trailing newline; the output is a function of the value alone.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

pub fn read_matrix(path: &Path) -> Result<RatMatrix, CliError> {
    let file: MatrixFile = read_json(path)?;
    file.to_matrix().map_err(|m| CliError::parse(path, m))
}

pub fn read_regions(path: &Path) -> Result<RegionPair, CliError> {
    let file: RegionFile = read_json(path)?;
    file.to_pair().map_err(|m| CliError::parse(path, m))
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::write(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
