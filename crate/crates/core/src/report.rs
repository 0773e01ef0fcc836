//! The analysis report: everything the pipeline derives from one input and one
//! circle, as exact strings in a stable order.
//!
//! Tables listing fixed points are sorted by vertex id; level and degree
//! tables by degree. Timings are opt-in, so by default a report is a pure
//! function of its input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::equivariant::{
    abbv_integrate, canonical_classes, equivariant_symplectic_class, kirwan_reduce, CanonicalBasis,
    EulerData,
};
use crate::error::Result;
use crate::exact::{format_rational, Rational, RationalMatrix};
use crate::gkm::{restrict_to_circle, CircleProfile, GkmGraph, LevelValue};
use crate::lefschetz::{
    delta_candidates, delta_certificate, hard_lefschetz_check, lefschetz_pairing, poincare_pairing,
    semifree_monotone_analysis, top_power_integral, verify_distinct, verify_symp_expansion,
    verify_vanish, verify_zeroclass, DegreeVerdict, LemmaEntry, Side,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Shift the moment map so its minimum is zero before analysing.
    pub shift_min: bool,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointRow {
    pub id: String,
    pub index: usize,
    pub moment: String,
    /// Ascending, so the row does not depend on edge order.
    pub circle_weights: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LevelRow {
    pub index: usize,
    pub vertices: Vec<String>,
    /// `"constant"`, `"non-constant"` or `"empty"`.
    pub value: String,
    pub constant: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Normalization {
    pub a: String,
    pub b: String,
    /// `a mu + b` at each fixed point, by id.
    pub values: BTreeMap<String, String>,
    /// The normalized moment map equals the Morse index everywhere.
    pub self_indexing: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProfileSummary {
    pub half_dim: usize,
    pub shift: String,
    pub points: Vec<PointRow>,
    pub levels: Vec<LevelRow>,
    pub betti: Vec<usize>,
    pub normalizer: Option<Normalization>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HypothesisSummary {
    pub constant_on_levels: bool,
    pub distinct_levels: bool,
    /// Whether the constant-level criterion for hard Lefschetz applies.
    pub theorem: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisRow {
    pub vertex: String,
    pub index: usize,
    pub negative_weight_product: String,
    /// `beta_F` restricted to each fixed point, by id.
    pub beta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub power: usize,
    pub verdict: String,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Option<Vec<Vec<String>>>,
    pub rank: Option<usize>,
    /// Rank of the localization pairing `int beta_F beta_G omega^{n-k}`.
    pub pairing_rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HardLefschetzSummary {
    pub holds: bool,
    pub omega: BTreeMap<String, String>,
    pub degrees: Vec<DegreeRow>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LemmaRow {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub quantities: BTreeMap<String, String>,
    pub note: Option<String>,
}

impl From<&LemmaEntry> for LemmaRow {
    fn from(e: &LemmaEntry) -> Self {
        Self {
            check: e.kind.name().to_string(),
            subject: e.subject.clone(),
            passed: e.passed,
            quantities: e.quantities.clone(),
            note: e.note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LedgerSummary {
    pub all_passed: bool,
    pub entries: Vec<LemmaRow>,
    /// Checks whose preconditions fail on this input.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemifreeSummary {
    pub semifree: bool,
    pub monotone_mu: BTreeMap<String, String>,
    pub self_indexing: bool,
    pub matches_moment_map: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairingRow {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub invertible: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LocalizationSummary {
    pub integral_omega_top: String,
    /// Every canonical class and every power `omega^j` of degree below `2n` integrates to zero.
    pub low_degree_integrals_vanish: bool,
    pub poincare_pairings: Vec<PairingRow>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input_sha256: String,
    pub xi: Vec<i64>,
    pub profile: ProfileSummary,
    pub hypothesis: HypothesisSummary,
    pub canonical_basis: Vec<BasisRow>,
    pub hard_lefschetz: HardLefschetzSummary,
    pub lemmas: LedgerSummary,
    pub semifree: SemifreeSummary,
    pub localization: LocalizationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

/// Hex SHA-256 of the canonical JSON form of `g`.
pub fn input_digest(g: &GkmGraph) -> String {
    hex::encode(Sha256::digest(g.to_json().as_bytes()))
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.on {
            let now = Instant::now();
            self.laps
                .insert(name.to_string(), (now - self.last).as_secs_f64() * 1e3);
            self.last = now;
        }
    }
}

/// Runs the whole pipeline for `g` and the circle `xi`.
pub fn analyze(g: &GkmGraph, xi: &[i64], opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut clock = Clock {
        on: opts.timings,
        last: Instant::now(),
        laps: BTreeMap::new(),
    };
    let raw = restrict_to_circle(g, xi)?;
    let p = if opts.shift_min {
        raw.min_normalized()
    } else {
        raw
    };
    let profile = profile_summary(&p);
    let hyp = p.check_hypothesis();
    let hypothesis = HypothesisSummary {
        constant_on_levels: hyp.constant_on_levels,
        distinct_levels: hyp.all_distinct,
        theorem: if hyp.constant_on_levels {
            "applicable"
        } else {
            "not applicable"
        }
        .into(),
    };
    clock.lap("profile");

    let basis = canonical_classes(g, &p)?;
    let canonical_basis = basis_table(&basis, &p);
    clock.lap("canonical classes");

    let ring = kirwan_reduce(&basis, &p)?;
    let hl = hard_lefschetz_check(&ring)?;
    let ids = |ix: Vec<usize>| {
        ix.into_iter()
            .map(|i| ring.labels[i].id.clone())
            .collect::<Vec<_>>()
    };
    let mut degrees = Vec::new();
    for d in &hl.degrees {
        let pairing_rank = match d.verdict {
            DegreeVerdict::Vacuous => None,
            _ => Some(lefschetz_pairing(&basis, &p, d.degree)?.rank()),
        };
        degrees.push(DegreeRow {
            degree: d.degree,
            power: d.power,
            verdict: match d.verdict {
                DegreeVerdict::Vacuous => "vacuous (odd degree)",
                DegreeVerdict::Isomorphism => "isomorphism",
                DegreeVerdict::NotIsomorphism => "not an isomorphism",
            }
            .into(),
            source: ids(ring.degree_part(d.degree)),
            target: ids(ring.degree_part(2 * hl.half_dim - d.degree)),
            matrix: d.matrix.as_ref().map(matrix_strings),
            rank: d.rank,
            pairing_rank,
        });
    }
    let omega = ring
        .labels
        .iter()
        .zip(ring.omega()?)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.id.clone(), format_rational(c)))
        .collect();
    let hard_lefschetz = HardLefschetzSummary {
        holds: hl.holds,
        omega,
        degrees,
    };
    clock.lap("hard lefschetz");

    let lemmas = ledger(&basis, &p)?;
    clock.lap("lemmas");

    let s = semifree_monotone_analysis(&p);
    let semifree = SemifreeSummary {
        semifree: s.semifree,
        monotone_mu: s
            .monotone_mu
            .iter()
            .enumerate()
            .map(|(i, m)| (p.point(i).id.clone(), format_rational(m)))
            .collect(),
        self_indexing: s.self_indexing,
        matches_moment_map: s.matches_moment_map,
    };
    let localization = localization_summary(&basis, &p)?;
    clock.lap("localization");

    Ok(AnalysisReport {
        schema: SCHEMA,
        input_sha256: input_digest(g),
        xi: xi.to_vec(),
        profile,
        hypothesis,
        canonical_basis,
        hard_lefschetz,
        lemmas,
        semifree,
        localization,
        timings_ms: opts.timings.then_some(clock.laps),
    })
}

fn matrix_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn by_id(p: &CircleProfile) -> Vec<usize> {
    let mut ix: Vec<usize> = (0..p.points().len()).collect();
    ix.sort_by(|&a, &b| p.point(a).id.cmp(&p.point(b).id));
    ix
}

fn profile_summary(p: &CircleProfile) -> ProfileSummary {
    let points = by_id(p)
        .into_iter()
        .map(|i| {
            let f = p.point(i);
            let mut circle_weights = f.circle_weights.clone();
            circle_weights.sort_unstable();
            PointRow {
                id: f.id.clone(),
                index: f.index,
                moment: format_rational(&f.moment),
                circle_weights,
            }
        })
        .collect();
    let levels = p
        .levels()
        .iter()
        .map(|l| {
            let mut vertices: Vec<String> =
                l.vertices.iter().map(|&i| p.point(i).id.clone()).collect();
            vertices.sort();
            let (value, constant) = match &l.value {
                LevelValue::Empty => ("empty", None),
                LevelValue::Constant(c) => ("constant", Some(format_rational(c))),
                LevelValue::NonConstant => ("non-constant", None),
            };
            LevelRow {
                index: l.index,
                vertices,
                value: value.into(),
                constant,
            }
        })
        .collect();
    let normalizer = p.self_indexing_normalizer().ok().flatten().map(|(a, b)| {
        let mut self_indexing = true;
        let values = by_id(p)
            .into_iter()
            .map(|i| {
                let f = p.point(i);
                let v = &a * &f.moment + &b;
                self_indexing &= v == Rational::from_integer((f.index as i64).into());
                (f.id.clone(), format_rational(&v))
            })
            .collect();
        Normalization {
            a: format_rational(&a),
            b: format_rational(&b),
            values,
            self_indexing,
        }
    });
    ProfileSummary {
        half_dim: p.half_dim(),
        shift: format_rational(p.offset()),
        points,
        levels,
        betti: p.betti(),
        normalizer,
        warnings: p.warnings().to_vec(),
    }
}

fn basis_table(basis: &CanonicalBasis, p: &CircleProfile) -> Vec<BasisRow> {
    let order = by_id(p);
    order
        .iter()
        .map(|&f| BasisRow {
            vertex: p.point(f).id.clone(),
            index: basis.index(f),
            negative_weight_product: format_rational(&basis.classes[f].negative_weight_product),
            beta: order
                .iter()
                .map(|&z| {
                    (
                        p.point(z).id.clone(),
                        basis.beta(f).restriction(z).to_string(),
                    )
                })
                .collect(),
        })
        .collect()
}

fn ledger(basis: &CanonicalBasis, p: &CircleProfile) -> Result<LedgerSummary> {
    let n = p.half_dim();
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    let constant = |k: usize| matches!(p.levels()[k].value, LevelValue::Constant(_));

    if n >= 1 && constant(1) {
        entries.push(verify_symp_expansion(p, basis)?);
    } else {
        skipped.push("symplectic-expansion: index-two level not constant".to_string());
    }
    for k in 0..=n {
        if constant(k) {
            entries.push(verify_vanish(p, k)?);
        } else {
            skipped.push(format!("level-vanishing: level {} not constant", 2 * k));
        }
    }
    let levels_ok = p.check_hypothesis();
    if levels_ok.constant_on_levels {
        entries.push(verify_distinct(p)?);
    } else {
        skipped.push("distinct-levels: levels not all constant".to_string());
    }
    for k in 0..=n {
        entries.push(verify_zeroclass(basis, k, Side::Low));
        entries.push(verify_zeroclass(basis, k, Side::High));
    }
    if levels_ok.constant_on_levels && levels_ok.all_distinct {
        for k in 0..=n / 2 {
            for (label, gamma) in delta_candidates(basis, p, k) {
                let mut c = delta_certificate(basis, p, &gamma, k)?;
                c.entry.subject = format!("degree {}: {label}", 2 * k);
                entries.push(c.entry);
            }
        }
    } else {
        skipped.push("delta-certificate: levels not constant and distinct".to_string());
    }
    let entries: Vec<LemmaRow> = entries.iter().map(LemmaRow::from).collect();
    Ok(LedgerSummary {
        all_passed: entries.iter().all(|e| e.passed),
        entries,
        skipped,
    })
}

fn localization_summary(basis: &CanonicalBasis, p: &CircleProfile) -> Result<LocalizationSummary> {
    let n = p.half_dim();
    let e = EulerData::new(p);
    let mut low = true;
    for f in 0..basis.len() {
        if basis.index(f) < 2 * n {
            low &= abbv_integrate(basis.beta(f), &e)?.is_zero();
        }
    }
    let omega = equivariant_symplectic_class(p, &Rational::zero());
    for j in 0..n {
        low &= abbv_integrate(&omega.pow(j as u32), &e)?.is_zero();
    }
    let mut poincare_pairings = Vec::new();
    for k in (0..=n).filter(|k| k % 2 == 0) {
        let m = poincare_pairing(basis, p, k)?;
        let rank = m.rank();
        poincare_pairings.push(PairingRow {
            degree: k,
            rows: m.rows(),
            cols: m.cols(),
            rank,
            invertible: m.rows() == m.cols() && rank == m.rows(),
        });
    }
    Ok(LocalizationSummary {
        integral_omega_top: format_rational(&top_power_integral(p)?),
        low_degree_integrals_vanish: low,
        poincare_pairings,
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable projection of the same data.
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let xi = self
            .xi
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(o, "input sha256 {}", self.input_sha256);
        let _ = writeln!(
            o,
            "xi = ({xi}), real dimension {}",
            2 * self.profile.half_dim
        );
        if self.profile.shift != "0" {
            let _ = writeln!(o, "moment map shifted by {}", self.profile.shift);
        }
        let _ = writeln!(o, "\nfixed points");
        for pt in &self.profile.points {
            let _ = writeln!(o, "  {:<12} index {:<2} mu {}", pt.id, pt.index, pt.moment);
        }
        let _ = writeln!(o, "\nlevels");
        for l in &self.profile.levels {
            let value = l.constant.clone().unwrap_or_else(|| l.value.clone());
            let _ = writeln!(
                o,
                "  index {:<2} {:<14} {}",
                l.index,
                value,
                l.vertices.join(" ")
            );
        }
        let betti = self
            .profile
            .betti
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>();
        let _ = writeln!(o, "betti ({})", betti.join(","));
        match &self.profile.normalizer {
            Some(nm) => {
                let _ = writeln!(
                    o,
                    "normalizer {} mu + {} (self-indexing: {})",
                    nm.a, nm.b, nm.self_indexing
                );
            }
            None => {
                let _ = writeln!(o, "normalizer none");
            }
        }
        for w in &self.profile.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        let _ = writeln!(
            o,
            "\nconstant on levels: {}; distinct: {}; constant-level criterion {}",
            self.hypothesis.constant_on_levels,
            self.hypothesis.distinct_levels,
            self.hypothesis.theorem
        );
        let _ = writeln!(
            o,
            "\nhard lefschetz: {}",
            if self.hard_lefschetz.holds {
                "holds"
            } else {
                "fails"
            }
        );
        for d in &self.hard_lefschetz.degrees {
            let rank = d.rank.map(|r| format!(" rank {r}")).unwrap_or_default();
            let _ = writeln!(
                o,
                "  degree {} -> {}: {}{rank}",
                d.degree,
                2 * self.profile.half_dim - d.degree,
                d.verdict
            );
            if let Some(m) = &d.matrix {
                for row in m {
                    let _ = writeln!(o, "    [{}]", row.join(", "));
                }
            }
        }
        let _ = writeln!(
            o,
            "\nchecks ({})",
            if self.lemmas.all_passed {
                "all passed"
            } else {
                "FAILURES"
            }
        );
        for e in &self.lemmas.entries {
            let _ = writeln!(
                o,
                "  {} {} {}",
                if e.passed { "ok  " } else { "FAIL" },
                e.check,
                e.subject
            );
        }
        for s in &self.lemmas.skipped {
            let _ = writeln!(o, "  skip {s}");
        }
        let _ = writeln!(
            o,
            "\nsemifree: {}; monotone mu self-indexing: {}",
            self.semifree.semifree, self.semifree.self_indexing
        );
        let _ = writeln!(
            o,
            "integral omega^n = {}; low-degree integrals vanish: {}",
            self.localization.integral_omega_top, self.localization.low_degree_integrals_vanish
        );
        if let Some(t) = &self.timings_ms {
            let _ = writeln!(o, "\ntimings (ms)");
            for (k, v) in t {
                let _ = writeln!(o, "  {k:<18} {v:.3}");
            }
        }
        o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::rat;

    #[test]
    fn su3_report() {
        let r = analyze(&catalog::su3_flag(), &[-1, 1], &AnalysisOptions::default()).unwrap();
        assert_eq!(r.schema, 1);
        let c: Vec<_> = r
            .profile
            .levels
            .iter()
            .map(|l| l.constant.clone().unwrap())
            .collect();
        assert_eq!(c, vec!["-2", "-1", "1", "2"]);
        assert_eq!(r.hypothesis.theorem, "applicable");
        assert!(r.hard_lefschetz.holds);
        assert!(r.lemmas.all_passed, "{:#?}", r.lemmas);
        assert!(r.lemmas.skipped.is_empty());
        assert!(r.localization.low_degree_integrals_vanish);
        assert_eq!(r.localization.integral_omega_top, "6");
        for d in &r.hard_lefschetz.degrees {
            assert_eq!(d.rank, d.pairing_rank);
        }
        assert!(r.timings_ms.is_none());
        assert!(!r.to_json().contains("timings"));
    }

    #[test]
    fn shift_min_moves_levels() {
        let opts = AnalysisOptions {
            shift_min: true,
            ..Default::default()
        };
        let r = analyze(&catalog::su3_flag(), &[-1, 1], &opts).unwrap();
        let c: Vec<_> = r
            .profile
            .levels
            .iter()
            .map(|l| l.constant.clone().unwrap())
            .collect();
        assert_eq!(c, vec!["0", "1", "3", "4"]);
        assert_eq!(r.profile.shift, "2");
    }

    #[test]
    fn so5_scale_two_is_self_indexing_after_normalizing() {
        let g = catalog::so5_orbit(&rat(2)).unwrap();
        let r = analyze(&g, &[-1, 3], &AnalysisOptions::default()).unwrap();
        let nm = r.profile.normalizer.unwrap();
        assert_eq!((nm.a.as_str(), nm.b.as_str()), ("1/2", "3"));
        assert!(nm.self_indexing);
    }

    #[test]
    fn negative_control_still_decides() {
        let r = analyze(
            &catalog::hirzebruch(1),
            &[1, 2],
            &AnalysisOptions::default(),
        )
        .unwrap();
        assert_eq!(r.hypothesis.theorem, "not applicable");
        assert!(r.hard_lefschetz.holds);
        assert!(!r.lemmas.skipped.is_empty());
    }

    #[test]
    fn text_mentions_verdict() {
        let r = analyze(&catalog::cp(2), &[1, 2], &AnalysisOptions::default()).unwrap();
        let t = r.to_text();
        assert!(t.contains("hard lefschetz: holds"));
        assert!(t.contains("betti (1,0,1,0,1)"));
    }
}
