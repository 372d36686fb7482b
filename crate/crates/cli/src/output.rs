use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use polykoebe::circle::MinModResult;
use polykoebe::cubic::{GammaSegment, ScanEntry, TypeTag};
use polykoebe::poly::FamilyKind;
use polykoebe::univalence::UnivalenceReport;
use polykoebe::Complex64;

use crate::numfmt::{sig, CSV_DIGITS, TEXT_DIGITS};
use crate::Format;

fn t(x: f64) -> String {
    sig(x, TEXT_DIGITS)
}

fn c(x: f64) -> String {
    sig(x, CSV_DIGITS)
}

fn point(z: Complex64) -> String {
    format!("({}, {})", t(z.re), t(z.im))
}

/// One invocation's output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Results,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Results {
    Family(FamilyOutput),
    Minmod(MinmodOutput),
    Mu(MuOutput),
    Membership(MembershipOutput),
    Scan(Vec<ScanEntry>),
    Extremal(ExtremalOutput),
    Univalence(UnivalenceReport),
    RadiusTable(Vec<RadiusRow>),
    Boundary(BoundaryOutput),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyOutput {
    pub kind: FamilyKind,
    pub degree: usize,
    pub polynomial: String,
    pub coefficients: Vec<f64>,
    pub value_at_minus_one: f64,
    pub conjectured_radius: f64,
    pub min_modulus: f64,
    /// Closed-form `q_N(-1)`, Suffridge only.
    pub suffridge_closed_form: Option<f64>,
    pub closed_form_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicCheck {
    #[serde(rename = "type")]
    pub tag: TypeTag,
    pub closed_form: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinmodOutput {
    #[serde(flatten)]
    pub result: MinModResult,
    pub cubic: Option<CubicCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuOutput {
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipOutput {
    pub a2: f64,
    pub a3: f64,
    pub member: bool,
    /// Exact region test, before the transcription slack.
    pub in_region: bool,
    pub boundary_distance: f64,
    pub on_boundary: bool,
    #[serde(rename = "type")]
    pub tag: TypeTag,
    pub min_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentInfimum {
    pub segment: GammaSegment,
    pub value: f64,
    pub a2: f64,
    pub a3: f64,
    /// Smallest `m` seen by the scan on this segment.
    pub scanned: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalOutput {
    pub infima: Vec<SegmentInfimum>,
    pub ordering_holds: bool,
    pub entries: Vec<ScanEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusRow {
    pub n: usize,
    pub conjectured_radius: f64,
    pub p_minus_one_abs: f64,
    pub min_modulus: f64,
    pub mu: f64,
    pub q_minus_one: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOutput {
    pub path: String,
    pub rows: usize,
}

const TEXT_SCAN_ROWS: usize = 10;

impl Report {
    pub fn new(command: &str, inputs: Value, results: Results) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            warnings: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.results.text();
                for w in &self.warnings {
                    let _ = writeln!(s, "warning: {w}");
                }
                s
            }
            Format::Csv => self.results.csv(),
        }
    }
}

fn scan_csv(entries: &[ScanEntry]) -> String {
    let mut s = String::from("a2,a3,m,segment,type\n");
    for e in entries {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c(e.point.a2),
            c(e.point.a3),
            c(e.m),
            e.segment,
            e.tag
        );
    }
    s
}

fn scan_text(entries: &[ScanEntry]) -> String {
    let mut s = format!(
        "{} points, best {}:\n",
        entries.len(),
        TEXT_SCAN_ROWS.min(entries.len())
    );
    let _ = writeln!(
        s,
        "{:>16} {:>16} {:>16} {:>4} {:>3}",
        "a2", "a3", "m", "seg", "type"
    );
    for e in entries.iter().take(TEXT_SCAN_ROWS) {
        let _ = writeln!(
            s,
            "{:>16} {:>16} {:>16} {:>4} {:>3}",
            t(e.point.a2),
            t(e.point.a3),
            t(e.m),
            e.segment,
            e.tag
        );
    }
    s
}

impl Results {
    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Results::Family(f) => {
                let name = match f.kind {
                    FamilyKind::Suffridge => "q",
                    FamilyKind::PN => "p",
                };
                let _ = writeln!(s, "{name}_{}(z) = {}", f.degree, f.polynomial);
                let coeffs: Vec<String> = f.coefficients.iter().map(|&x| t(x)).collect();
                let _ = writeln!(s, "coefficients: {}", coeffs.join(", "));
                let _ = writeln!(s, "p(-1) = {}", t(f.value_at_minus_one));
                let _ = writeln!(s, "m = {}", t(f.min_modulus));
                let _ = writeln!(s, "conjectured radius = {}", t(f.conjectured_radius));
                if let (Some(cf), Some(d)) = (f.suffridge_closed_form, f.closed_form_delta) {
                    let _ = writeln!(s, "closed-form q_N(-1) = {} (delta {})", t(cf), t(d));
                }
            }
            Results::Minmod(m) => {
                let _ = writeln!(s, "m = {}", t(m.result.value));
                if m.result.whole_circle {
                    let _ = writeln!(s, "minimizers: whole circle");
                } else {
                    let pts: Vec<String> = m.result.minimizers.iter().map(|&z| point(z)).collect();
                    let _ = writeln!(s, "minimizers: {}", pts.join(", "));
                }
                if let Some(cc) = &m.cubic {
                    let _ = writeln!(
                        s,
                        "type {}: closed form {} (delta {})",
                        cc.tag,
                        t(cc.closed_form),
                        t(cc.delta)
                    );
                }
            }
            Results::Mu(m) => {
                let _ = writeln!(s, "mu = {}", t(m.value));
            }
            Results::Membership(m) => {
                let _ = writeln!(s, "({}, {}) member: {}", t(m.a2), t(m.a3), m.member);
                let _ = writeln!(
                    s,
                    "boundary distance = {}{}",
                    t(m.boundary_distance),
                    if m.on_boundary { " (on boundary)" } else { "" }
                );
                let _ = writeln!(s, "type {}, m = {}", m.tag, t(m.min_modulus));
            }
            Results::Scan(entries) => s = scan_text(entries),
            Results::Extremal(e) => {
                for inf in &e.infima {
                    let _ = writeln!(
                        s,
                        "inf m on {} = {} at ({}, {})",
                        inf.segment,
                        t(inf.value),
                        t(inf.a2),
                        t(inf.a3)
                    );
                }
                let _ = writeln!(s, "ordering G2 < G3 < G1: {}", e.ordering_holds);
                s.push_str(&scan_text(&e.entries));
            }
            Results::Univalence(r) => {
                let _ = writeln!(
                    s,
                    "verdict: {:?} ({:?}) at radius {}",
                    r.verdict,
                    r.evidence,
                    t(r.boundary_radius)
                );
                let moduli: Vec<String> = r.derivative_root_moduli.iter().map(|&x| t(x)).collect();
                let _ = writeln!(s, "critical point moduli: [{}]", moduli.join(", "));
                let _ = writeln!(s, "injectivity margin = {}", t(r.injectivity_margin));
                if let Some((z1, z2)) = r.witness {
                    let _ = writeln!(s, "witness: {} and {}", point(z1), point(z2));
                }
            }
            Results::RadiusTable(rows) => {
                let _ = writeln!(
                    s,
                    "{:>4} {:>16} {:>16} {:>16} {:>16} {:>16}",
                    "N", "rho", "|p_N(-1)|", "m(p_N)", "mu(p_N)", "q_N(-1)"
                );
                for r in rows {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>16} {:>16} {:>16} {:>16} {:>16}{}",
                        r.n,
                        t(r.conjectured_radius),
                        t(r.p_minus_one_abs),
                        t(r.min_modulus),
                        t(r.mu),
                        t(r.q_minus_one),
                        if r.flagged { "  *" } else { "" }
                    );
                }
            }
            Results::Boundary(b) => {
                let _ = writeln!(s, "wrote {} rows to {}", b.rows, b.path);
            }
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::new();
        match self {
            Results::Family(f) => {
                s.push_str("k,coefficient\n");
                for (k, a) in f.coefficients.iter().enumerate() {
                    let _ = writeln!(s, "{},{}", k + 1, c(*a));
                }
            }
            Results::Minmod(m) => {
                s.push_str("re,im,modulus\n");
                for z in &m.result.minimizers {
                    let _ = writeln!(s, "{},{},{}", c(z.re), c(z.im), c(m.result.value));
                }
            }
            Results::Mu(m) => {
                let _ = write!(s, "mu\n{}\n", c(m.value));
            }
            Results::Membership(m) => {
                s.push_str("a2,a3,member,boundary_distance,type,m\n");
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c(m.a2),
                    c(m.a3),
                    m.member,
                    c(m.boundary_distance),
                    m.tag,
                    c(m.min_modulus)
                );
            }
            Results::Scan(entries) => s = scan_csv(entries),
            Results::Extremal(e) => s = scan_csv(&e.entries),
            Results::Univalence(r) => {
                s.push_str("verdict,radius,margin,min_critical_modulus\n");
                let min_crit = r
                    .derivative_root_moduli
                    .first()
                    .copied()
                    .unwrap_or(f64::INFINITY);
                let _ = writeln!(
                    s,
                    "{:?},{},{},{}",
                    r.verdict,
                    c(r.boundary_radius),
                    c(r.injectivity_margin),
                    c(min_crit)
                );
            }
            Results::RadiusTable(rows) => {
                s.push_str("n,rho,p_minus_one_abs,m,mu,q_minus_one,flagged\n");
                for r in rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        r.n,
                        c(r.conjectured_radius),
                        c(r.p_minus_one_abs),
                        c(r.min_modulus),
                        c(r.mu),
                        c(r.q_minus_one),
                        r.flagged
                    );
                }
            }
            Results::Boundary(b) => {
                let _ = write!(s, "path,rows\n{},{}\n", b.path, b.rows);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polykoebe::circle::min_modulus_default;
    use polykoebe::cubic::{extremal_scan, CubicPoint};
    use polykoebe::poly::{family, RealPolynomial};
    use polykoebe::univalence::check_univalent;
    use serde::de::DeserializeOwned;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
        let s = serde_json::to_string(x).unwrap();
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, x, "{s}");
    }

    #[test]
    fn result_types_round_trip() {
        let p = family(FamilyKind::PN, 5).unwrap();
        round_trip(&FamilyOutput {
            kind: FamilyKind::Suffridge,
            degree: 5,
            polynomial: p.to_string(),
            coefficients: p.coeffs().to_vec(),
            value_at_minus_one: p.eval_real(-1.0),
            conjectured_radius: 0.1 + 0.2,
            min_modulus: 1.0 / 3.0,
            suffridge_closed_form: Some(-0.3),
            closed_form_delta: None,
        });
        let q = CubicPoint::new(-0.5, 1.0 / 6.0).polynomial().unwrap();
        round_trip(&MinmodOutput {
            result: min_modulus_default(&q),
            cubic: Some(CubicCheck {
                tag: TypeTag::TypeII,
                closed_form: 0.658_807_845_868,
                delta: 1e-17,
            }),
        });
        round_trip(&MuOutput {
            value: -std::f64::consts::FRAC_1_SQRT_2,
        });
        round_trip(&MembershipOutput {
            a2: 0.8944272,
            a3: 0.2763932,
            member: true,
            in_region: false,
            boundary_distance: 7.9e-9,
            on_boundary: true,
            tag: TypeTag::TypeI,
            min_modulus: 0.381966,
        });
        let scan = extremal_scan(200).unwrap();
        round_trip(&scan.entries);
        round_trip(&ExtremalOutput {
            infima: vec![SegmentInfimum {
                segment: GammaSegment::G2R,
                value: 0.38,
                a2: -0.89,
                a3: 0.27,
                scanned: 0.39,
            }],
            ordering_holds: true,
            entries: scan.entries[..5].to_vec(),
        });
        for coeffs in [vec![1.0, 0.6], vec![1.0, 0.0, 1.0 / 3.0], vec![1.0]] {
            round_trip(
                &check_univalent(&RealPolynomial::new(coeffs).unwrap(), 0.999, 512).unwrap(),
            );
        }
        round_trip(&vec![RadiusRow {
            n: 3,
            conjectured_radius: 0.381_966_011_250_105_1,
            p_minus_one_abs: 0.381_966_011_250_105_2,
            min_modulus: 0.38,
            mu: -0.38,
            q_minus_one: -0.39,
            flagged: false,
        }]);
        round_trip(&BoundaryOutput {
            path: "out.csv".into(),
            rows: 4,
        });
    }

    #[test]
    fn report_json_layout() {
        let r = Report::new(
            "mu",
            serde_json::json!({"coeffs": [1.0]}),
            Results::Mu(MuOutput { value: -1.0 }),
        );
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["command"], "mu");
        assert_eq!(v["results"]["value"], -1.0);
        assert!(v["warnings"].as_array().unwrap().is_empty());
    }
}
