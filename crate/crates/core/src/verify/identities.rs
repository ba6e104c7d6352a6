use std::fmt;

use num_traits::One;

use super::{first_witness, Backend, Stopwatch, Subject, VerificationReport, VerifyError};
use crate::catalog::{build_gc_closed, CatalogEntry};
use crate::scalar::{parse_rational, Rational};
use crate::tensor::QMatrix;

/// `coef · X_ab Y_cd ...` with each factor `Ĝ` or `Ĉ` on a leg pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Rational,
    pub factors: Vec<(char, usize)>,
    text: String,
}

/// A chain `t₀ = t₁ = … = t_k`; link `i` compares `t₀` with `t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityChain {
    pub letter: char,
    pub terms: Vec<Term>,
}

const PAIRS: [&str; 3] = ["12", "13", "23"];

fn parse_term(text: &str) -> Term {
    let mut coef = Rational::one();
    let mut factors = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "-" {
            coef = -coef;
        } else if let Some(pair) = PAIRS.iter().position(|p| tok.len() == 3 && tok[1..] == **p) {
            let kind = tok.chars().next().unwrap();
            assert!(kind == 'G' || kind == 'C', "bad factor {tok}");
            factors.push((kind, pair));
        } else {
            coef *= parse_rational(tok).expect("coefficient token");
        }
    }
    Term { coef, factors, text: text.trim().to_string() }
}

fn chain(letter: char, text: &str) -> IdentityChain {
    IdentityChain { letter, terms: text.split('=').map(parse_term).collect() }
}

impl fmt::Display for IdentityChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.terms.iter().map(|t| t.text.as_str()).collect();
        write!(f, "({}) {}", self.letter, parts.join(" = "))
    }
}

/// Chains (c) through (k), shared by every projective entry.
fn common_chains() -> Vec<IdentityChain> {
    vec![
        chain('c', "C12 G13 G23 = G23 G13 C12 = - G23"),
        chain('d', "G12 G13 C23 = C23 G13 G12 = - G12"),
        chain('e', "C12 C13 C23 = C23 C13 C12 = C13"),
        chain('f', "G13 G23 = - C12 G23 = - G13 C12"),
        chain('g', "G12 G13 = - C23 G13 = - G12 C23"),
        chain('h', "G13 G12 = - C23 G12 = - G13 C23"),
        chain('i', "G23 G13 = - C12 G13 = - G23 C12"),
        chain('j', "C12 C13 = C23 C12 = C13 C23"),
        chain('k', "C13 C12 = C12 C23 = C23 C13"),
    ]
}

/// The identity list for a projective entry; (a) and (b) depend on the
/// division algebra.
pub fn identity_suite(entry: &CatalogEntry) -> Result<Vec<IdentityChain>, VerifyError> {
    let (a, b) = match *entry {
        CatalogEntry::Sphere { n, .. } => (
            format!("G12 G23 = - C13 G23 = - G12 C13 = - G12 G13 G23 = 1/{n} G12 C13 G23 = - G12 C13 C23 = - C23 G13 C12 = - C12 C13 G23"),
            format!("G23 G12 = - G23 C13 = - C13 G12 = - G23 G13 G12 = 1/{n} G23 C13 G12 = - G23 C13 C12 = - C12 G13 C23 = - C23 C13 G12"),
        ),
        CatalogEntry::ComplexProjective { n } => {
            let m = 2 * n;
            (
                format!("G12 G23 = - C13 G23 = - G12 C13 = 1/{m} G12 C13 G23"),
                format!("G23 G12 = - G23 C13 = - C13 G12 = 1/{m} G23 C13 G12"),
            )
        }
        CatalogEntry::QuaternionicProjective { n } => {
            let m = 4 * n;
            (
                format!("G12 G23 = - C13 G23 = - G12 C13 = 1/2 G12 G13 G23 = 1/{m} G12 C13 G23 = 1/2 G12 C13 C23 = 1/2 C23 G13 C12 = 1/2 C12 C13 G23"),
                format!("G23 G12 = - G23 C13 = - C13 G12 = 1/2 G23 G13 G12 = 1/{m} G23 C13 G12 = 1/2 G23 C13 C12 = 1/2 C12 G13 C23 = 1/2 C23 C13 G12"),
            )
        }
        _ => return Err(VerifyError::Invalid(format!("no identity suite for `{}`", entry.id()))),
    };
    let mut out = vec![chain('a', &a), chain('b', &b)];
    out.extend(common_chains());
    Ok(out)
}

/// One report per chain, each naming the first violated link.
pub fn check_identity_suite(entry: &CatalogEntry) -> Result<Vec<VerificationReport>, VerifyError> {
    let suite = identity_suite(entry)?;
    let (g, c) = build_gc_closed(entry);
    let d = entry.leg_dim();
    let ambient = [d, d, d];
    let targets = [[0, 1], [0, 2], [1, 2]];
    let embed = |m: &QMatrix| -> Result<Vec<QMatrix>, VerifyError> {
        targets.iter().map(|t| m.embed(t, &ambient).map_err(VerifyError::from)).collect()
    };
    let (gs, cs) = (embed(&g)?, embed(&c)?);
    let subject = Subject::from(entry);
    let eval = |t: &Term| -> Result<QMatrix, VerifyError> {
        let mut acc: Option<QMatrix> = None;
        for &(kind, pair) in &t.factors {
            let m = if kind == 'G' { &gs[pair] } else { &cs[pair] };
            acc = Some(match acc {
                None => m.clone(),
                Some(x) => x.mul(m)?,
            });
        }
        Ok(acc.expect("nonempty term").scale(&t.coef))
    };
    let mut reports = Vec::with_capacity(suite.len());
    for chain in &suite {
        let watch = Stopwatch::start();
        let first = eval(&chain.terms[0])?;
        let mut report = VerificationReport::new(format!("identity-{}", chain.letter), &subject, Backend::Exact).with_detail(chain.to_string());
        for (i, t) in chain.terms.iter().enumerate().skip(1) {
            let diff = first.sub(&eval(t)?)?;
            let at = format!("link {i}: {} = {}", chain.terms[0].text, t.text);
            if let Some(w) = first_witness(&diff, Some(at)) {
                report = report.with_witness(Some(w));
                break;
            }
        }
        reports.push(report.timed(&watch));
    }
    Ok(reports)
}
