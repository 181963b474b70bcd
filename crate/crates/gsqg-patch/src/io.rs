//! JSON and CSV output with every float written to 17 significant digits.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::diagnostics::PatchFamily;
use crate::kernels::MultiplierTable;
use crate::solver::SolutionBranch;
use crate::Result;

/// `d.dddddddddddddddde±x`, round-trip exact.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Pretty JSON formatter that prints floats with [`format_f64`].
struct Precise<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident $(, $arg:ident: $ty:ty)*;)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for Precise<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    delegate! {
        begin_array;
        end_array;
        begin_array_value, first: bool;
        end_array_value;
        begin_object;
        end_object;
        begin_object_key, first: bool;
        begin_object_value;
        end_object_value;
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value)?)?;
    Ok(())
}

pub fn read_branch(path: &Path) -> Result<SolutionBranch> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// `patch_id,theta,x,y` rows for every patch of the family.
pub fn boundary_csv(fam: &PatchFamily) -> String {
    let mut s = String::from("patch_id,theta,x,y\n");
    for c in &fam.curves {
        for (t, p) in c.theta.iter().zip(c.points()) {
            let _ = writeln!(s, "{},{},{},{}", c.patch_id, format_f64(*t), format_f64(p[0]), format_f64(p[1]));
        }
    }
    s
}

/// `j,beta_j,gamma_j` for `j = 1..=jmax`; `gamma_j` is blank outside `α ∈ [1,2)`.
pub fn multiplier_csv(table: &MultiplierTable) -> String {
    let mut s = String::from("j,beta_j,gamma_j\n");
    for j in 1..=table.jmax() {
        let g = if table.has_gamma() { format_f64(table.gamma(j)) } else { String::new() };
        let _ = writeln!(s, "{j},{},{g}", format_f64(table.beta(j)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{Mode, PatchGeometry};
    use crate::solver::{BranchRecord, SolverConfig};
    use crate::spectral::FourierCosSeries;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, 0.0, -0.125] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let digits = s.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).count();
            assert_eq!(digits, 17);
        }
    }

    #[test]
    fn branch_json_shape_and_round_trip() {
        let b = SolutionBranch {
            alpha: 1.0,
            d: 1.0,
            mode: Mode::Corotating { m: 2 },
            config: SolverConfig::default(),
            records: vec![BranchRecord {
                eps: 0.01,
                speed: -0.125,
                residual: 1e-12,
                iters: 2,
                coeffs: FourierCosSeries::new(vec![0.1, 1.0 / 3.0]).unwrap(),
                history: vec![1e-3, 1e-12],
                diagnostics: None,
            }],
            termination: None,
        };
        let s = to_json(&b).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["mode"], "corotating");
        assert_eq!(v["m"], 2);
        assert!(v["config"]["j"].is_u64());
        assert!(v["records"][0]["coeffs"].is_array());
        assert!(s.contains("3.3333333333333331e-1"));
        let back: SolutionBranch = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);

        let t = SolutionBranch { mode: Mode::Travelling, records: vec![], ..b };
        let v: serde_json::Value = serde_json::from_str(&to_json(&t).unwrap()).unwrap();
        assert_eq!(v["mode"], "travelling");
        assert!(v.get("m").is_none());
    }

    #[test]
    fn multiplier_rows() {
        let t = MultiplierTable::new(1.0, 4).unwrap();
        let csv = multiplier_csv(&t);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("j,beta_j,gamma_j"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "1");
        assert!((first[1].parse::<f64>().unwrap() - 8.0).abs() < 1e-14);
        let t = MultiplierTable::new(0.5, 2).unwrap();
        assert!(multiplier_csv(&t).lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn boundary_rows() {
        let g = PatchGeometry::corotating(1.0, 1.0, 3, 0.1).unwrap();
        let r = BranchRecord {
            eps: 0.1,
            speed: -0.3,
            residual: 0.0,
            iters: 0,
            coeffs: FourierCosSeries::zeros(4),
            history: vec![],
            diagnostics: None,
        };
        let fam = crate::diagnostics::reconstruct(&r, &g, 32).unwrap();
        let csv = boundary_csv(&fam);
        assert_eq!(csv.lines().count(), 1 + 3 * 32);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,"));
    }
}
