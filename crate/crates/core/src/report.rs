//! The full family for one `m`: class polynomial, `g`, the alpha table,
//! curve equations and every certificate, as a serializable record.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algnum::IntPoly;
use crate::curvefam::{
    bits_for_digits, build_alpha_table, hyperelliptic_equation, quartic_coeffs, quartic_equation, AlphaTable,
    CurveEquationRecord, RootPath,
};
use crate::error::{Error, Result};
use crate::latticecert::{build_certificate, twisting_nonzero, IsoCertificate};
use crate::quartic_iso::{are_isomorphic, distinctness_certificate, DistinctnessCertificate, IsoVerdict};
use crate::realball::precision_cap;

/// Print `g` in full only up to this degree in the text report.
const TEXT_G_MAX_DEGREE: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRecord {
    pub d: u64,
    pub name: String,
    pub j: String,
    pub mu: String,
    pub interval: [String; 2],
    /// Minimal polynomial when recovered and certified irreducible.
    pub minpoly: Option<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFactorization {
    pub content: String,
    /// Distinct minimal polynomials of the alphas.
    pub factors: Vec<IntPoly>,
    /// `g / (content * prod factors)`.
    pub cofactor: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticRecord {
    pub d: u64,
    pub equation: CurveEquationRecord,
    pub nonsingular: bool,
    pub twist_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub d1: u64,
    pub d2: u64,
    pub verdict: IsoVerdict,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub m: u64,
    pub h: usize,
    pub digits: u32,
    pub precision: u32,
    pub f: IntPoly,
    pub g: IntPoly,
    pub g_factorization: Option<GFactorization>,
    pub root_path: RootPath,
    pub alphas: Vec<AlphaRecord>,
    pub hyperelliptic: CurveEquationRecord,
    pub quartics: Vec<QuarticRecord>,
    pub pairs: Vec<PairRecord>,
    pub distinctness: DistinctnessCertificate,
    pub lattice: Vec<IsoCertificate>,
    pub notes: Vec<String>,
}

impl FamilyReport {
    /// Every certificate in the report passed.
    pub fn all_certified(&self) -> bool {
        self.quartics.iter().all(|q| q.nonsingular && q.twist_nonzero)
            && self.pairs.iter().all(|p| p.verdict == IsoVerdict::NonIsomorphic)
            && self.distinctness.valid
            && self.lattice.iter().all(|c| c.is_valid())
    }
}

fn factor_g(table: &AlphaTable) -> Result<Option<GFactorization>> {
    let mut factors: Vec<IntPoly> = Vec::new();
    for e in &table.entries {
        match e.alpha.minimal() {
            Some(p) if !factors.contains(p) => factors.push(p.clone()),
            Some(_) => {}
            None => return Ok(None),
        }
    }
    let content = table.g.content();
    let mut rest = table.g.div_scalar_exact(&content)?;
    for p in &factors {
        rest = rest.exact_divide(p)?;
    }
    Ok(Some(GFactorization { content: content.to_string(), factors, cofactor: rest }))
}

/// Certify that `C(alpha_1, alpha_d1)` and `C(alpha_1, alpha_d2)` are not isomorphic.
fn pair_verdict(table: &AlphaTable, d1: u64, d2: u64, start: u32) -> Result<PairRecord> {
    let a1 = table.alpha1();
    let x = table.alpha(d1).expect("divisor present");
    let y = table.alpha(d2).expect("divisor present");
    let mut p = start;
    loop {
        let t1 = quartic_coeffs(a1, x, p)?.triple;
        let t2 = quartic_coeffs(a1, y, p)?.triple;
        let verdict = match are_isomorphic(&t1, &t2) {
            Ok(r) => r.verdict,
            Err(Error::Undecided(_)) => IsoVerdict::Undecided,
            Err(e) => return Err(e),
        };
        if verdict != IsoVerdict::Undecided || p >= precision_cap() {
            return Ok(PairRecord { d1, d2, verdict, precision: p });
        }
        p = (p * 2).min(precision_cap());
    }
}

/// Run the whole pipeline for `m`.
pub fn family_report(m: u64, digits: u32, precision_bits: Option<u32>) -> Result<FamilyReport> {
    if digits < 7 {
        return Err(Error::InvalidArgument("at least 7 digits are required".into()));
    }
    let prec = precision_bits.unwrap_or_else(|| bits_for_digits(digits)).max(bits_for_digits(digits));
    let table = build_alpha_table(m).map_err(|e| e.in_stage("alpha table"))?;
    let mut notes = vec![
        "H(alpha_1) is given by its displayed singular model; the normalization is not constructed.".to_string(),
        "The identification of C(alpha_1, alpha_d) with the quotient (F_d x F_d x F')/G_d is not re-derived; \
         only the nonvanishing of the twisting value T is checked."
            .to_string(),
        "The lattice certificate verifies the matrix scaled by 1/d; the unscaled matrix maps L_1 x L_1 into \
         L_d x L_d with index d^4."
            .to_string(),
    ];
    if table.entries.iter().any(|e| e.alpha.minimal().is_none()) {
        notes.push(
            "Minimal polynomials were not recovered at this class number; each alpha is specified by g and \
             its isolating interval."
                .to_string(),
        );
    }

    let mut alphas = Vec::new();
    for e in &table.entries {
        let mu = e.alpha.refine(prec).map_err(|e| e.in_stage("mu decimals"))?;
        let (lo, hi) = e.alpha.interval();
        alphas.push(AlphaRecord {
            d: e.d,
            name: format!("alpha_{}", e.d),
            j: e.j.re.to_decimal(digits),
            mu: mu.to_decimal(digits),
            interval: [lo.to_string(), hi.to_string()],
            minpoly: e.alpha.minimal().cloned(),
        });
    }

    let hyperelliptic = hyperelliptic_equation(table.alpha1(), "alpha_1", prec)
        .map_err(|e| e.in_stage("hyperelliptic curve"))?
        .record(digits);
    let mut quartics = Vec::new();
    for e in table.quartic_entries() {
        let stage = |err: Error| err.in_stage(&format!("quartic d = {}", e.d));
        let eq = quartic_equation(table.alpha1(), &e.alpha, e.d, prec).map_err(stage)?;
        quartics.push(QuarticRecord {
            d: e.d,
            equation: eq.record(digits),
            nonsingular: true,
            twist_nonzero: twisting_nonzero(table.alpha1(), &e.alpha).map_err(stage)?,
        });
    }

    let qs = table.quartic_entries();
    let mut pairs = Vec::new();
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            pairs.push(pair_verdict(&table, qs[i].d, qs[j].d, prec).map_err(|e| e.in_stage("pairwise isomorphism"))?);
        }
    }

    let others: Vec<_> = qs.iter().map(|e| (e.d, e.alpha.clone())).collect();
    let distinctness =
        distinctness_certificate(table.alpha1(), &others).map_err(|e| e.in_stage("distinctness"))?;
    let lattice = table
        .entries
        .iter()
        .map(|e| build_certificate(m, e.d))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.in_stage("lattice certificates"))?;

    Ok(FamilyReport {
        m,
        h: table.classpoly.h,
        digits,
        precision: prec,
        f: table.classpoly.f.clone(),
        g_factorization: factor_g(&table).map_err(|e| e.in_stage("factoring g"))?,
        g: table.g,
        root_path: table.path,
        alphas,
        hyperelliptic,
        quartics,
        pairs,
        distinctness,
        lattice,
        notes,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "certified"
    } else {
        "NOT certified"
    }
}

/// Human-readable rendering; every digit comes from the same strings as the JSON form.
pub fn render_text(r: &FamilyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m = {}, class number h = {}", r.m, r.h);
    let _ = writeln!(s, "f = {}", r.f);
    match &r.g_factorization {
        Some(gf) => {
            let mut parts = vec![gf.content.clone(), format!("({})", gf.cofactor)];
            parts.extend(gf.factors.iter().map(|p| format!("({p})")));
            let _ = writeln!(s, "g = {}", parts.join(" * "));
        }
        None if r.g.degree() <= TEXT_G_MAX_DEGREE => {
            let _ = writeln!(s, "g = {}", r.g);
        }
        None => {
            let _ = writeln!(s, "g: degree {}, coefficients up to {} bits (full polynomial in the JSON report)", r.g.degree(), r.g.max_coeff_bits());
        }
    }
    let _ = writeln!(s, "\nroots of g in (0, 1):");
    for a in &r.alphas {
        let arg = if a.d == 1 { format!("sqrt({})", r.m) } else { format!("sqrt({})/{}", r.m, a.d) };
        let _ = writeln!(s, "  {} = mu({arg}) = {}", a.name, a.mu);
        let _ = writeln!(s, "    j = {}", a.j);
        match &a.minpoly {
            Some(p) => {
                let _ = writeln!(s, "    minimal polynomial: {p}");
            }
            None => {
                let _ = writeln!(s, "    isolating interval: [{}, {}]", a.interval[0], a.interval[1]);
            }
        }
    }
    let c0 = &r.hyperelliptic.coefficients["c0"];
    let _ = writeln!(s, "\nH(alpha_1): W^2 = X^4 + Y^4 + c0, X^2 + Y^2 = 1");
    let _ = writeln!(s, "  c0 = {} = {}", c0.expr, c0.decimal);
    for q in &r.quartics {
        let co = &q.equation.coefficients;
        let _ = writeln!(
            s,
            "\nC(alpha_1, alpha_{}): X^4 + Y^4 + Z^4 + a X^2Y^2 + b X^2Z^2 + b Y^2Z^2 = 0",
            q.d
        );
        let _ = writeln!(s, "  a = {} = {}", co["a"].expr, co["a"].decimal);
        let _ = writeln!(s, "  b = {} = {}", co["b"].expr, co["b"].decimal);
        let _ = writeln!(s, "  nonsingular: {}, T != 0: {}", yes(q.nonsingular), yes(q.twist_nonzero));
    }
    if !r.pairs.is_empty() {
        let _ = writeln!(s, "\npairwise isomorphism:");
        for p in &r.pairs {
            let _ = writeln!(s, "  C(alpha_1, alpha_{}) vs C(alpha_1, alpha_{}): {}", p.d1, p.d2, p.verdict);
        }
    }
    let _ = writeln!(s, "\ndistinctness certificate: {}", yes(r.distinctness.valid));
    for rec in &r.distinctness.records {
        let _ = writeln!(s, "  {} {} {}  (gap > {})", rec.lhs, rec.relation, rec.rhs, rec.gap);
    }
    let _ = writeln!(s, "\nlattice certificates:");
    for c in &r.lattice {
        let _ = writeln!(
            s,
            "  d = {}: (u, v) = ({}, {}), det = {}, torsion checks {}",
            c.d,
            c.u,
            c.v,
            c.det,
            if c.torsion.all_ok() { "pass" } else { "FAIL" }
        );
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "\nnotes:");
        for n in &r.notes {
            let _ = writeln!(s, "  - {n}");
        }
    }
    s
}
