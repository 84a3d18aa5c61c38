//! Printed closed forms per family, kept in their printed shape.

use metrics::Metric;
use states::{BellKind, FamilySelector, FamilyTag};

use crate::x_state::{x_concurrence, x_fidelity, x_mixedness, x_ttdagger_eigs, XEntries};
use crate::{Quantity, Validity};

#[derive(Clone, Copy)]
pub(crate) enum Eval {
    Param(fn(f64) -> f64),
    Entries(fn(&XEntries) -> f64),
    ParamTriple(fn(f64) -> [f64; 3]),
    EntriesTriple(fn(&XEntries) -> [f64; 3]),
}

/// One printed expression together with the parameter range it was printed for.
#[derive(Clone, Copy)]
pub struct ClosedForm {
    pub source: &'static str,
    pub metric: Metric,
    pub validity: Validity,
    pub(crate) eval: Eval,
}

impl ClosedForm {
    /// The quantities this form produces: one scalar, or the three `T^T T` eigenvalues.
    pub fn quantities(&self) -> Vec<Quantity> {
        match self.eval {
            Eval::Param(_) | Eval::Entries(_) => vec![Quantity::Metric(self.metric)],
            Eval::ParamTriple(_) | Eval::EntriesTriple(_) => (0..3).map(Quantity::TtEigenvalue).collect(),
        }
    }
}

const ALL: Validity = Validity::closed(0.0, 1.0);

fn form(source: &'static str, metric: Metric, eval: Eval) -> ClosedForm {
    ClosedForm { source, metric, validity: ALL, eval }
}

fn p(source: &'static str, metric: Metric, f: fn(f64) -> f64) -> ClosedForm {
    form(source, metric, Eval::Param(f))
}

fn sq(x: f64) -> f64 {
    x * x
}

// The u triple is compared through M, which is what it feeds.
fn x_generic() -> Vec<ClosedForm> {
    vec![
        form("x-state concurrence", Metric::Concurrence, Eval::Entries(x_concurrence)),
        form("x-state fidelity", Metric::Fidelity, Eval::Entries(x_fidelity)),
        form("x-state mixedness", Metric::LinearEntropy, Eval::Entries(x_mixedness)),
        form("x-state ttdagger eigenvalues", Metric::MValue, Eval::EntriesTriple(x_ttdagger_eigs)),
    ]
}

fn rho1_concurrence_upper(p: f64) -> f64 {
    2.0 * p / 3.0 - 2.0 * ((3.0 - p) * (1.0 - p) / 12.0).sqrt()
}

fn rho1_fidelity(p: f64) -> f64 {
    0.5 + ((1.0 - p / 3.0).abs() + (-1.0 + 5.0 * p / 3.0).abs() + (1.0 - 4.0 * p / 3.0).abs()) / 6.0
}

fn rho1_mixedness(p: f64) -> f64 {
    20.0 * p / 9.0 - 44.0 * p * p / 27.0
}

fn rho1(bell: BellKind) -> Vec<ClosedForm> {
    let upper = Validity { lo: 0.7081, lo_open: true, ..ALL };
    match bell {
        BellKind::PhiPlus => vec![
            ClosedForm {
                validity: upper,
                ..p("rho1/rho3:phi+ concurrence, upper branch", Metric::Concurrence, rho1_concurrence_upper)
            },
            ClosedForm {
                validity: Validity { hi: 0.6, hi_open: true, ..ALL },
                ..p("rho1/rho3:phi+ concurrence, lower branch", Metric::Concurrence, |p| {
                    1.0 - p - 2.0 / 3.0 * (p * p).sqrt()
                })
            },
            p("rho1/rho3:phi+ fidelity", Metric::Fidelity, rho1_fidelity),
            p("rho1/rho3:phi+ mixedness", Metric::LinearEntropy, rho1_mixedness),
            p("rho1/rho3:phi+ Bell-CHSH M", Metric::MValue, |p| 4.0 - 10.0 * p + 67.0 * p * p / 9.0),
        ],
        _ => vec![
            ClosedForm {
                validity: upper,
                ..p("rho1/rho3:phi- concurrence, upper branch", Metric::Concurrence, rho1_concurrence_upper)
            },
            p("rho1/rho3:phi- fidelity", Metric::Fidelity, rho1_fidelity),
            p("rho1/rho3:phi- mixedness", Metric::LinearEntropy, rho1_mixedness),
            p("rho1/rho3:phi- Bell-CHSH M", Metric::MValue, |p| 4.0 - 22.0 * p / 3.0 + 43.0 * p * p / 9.0),
        ],
    }
}

fn rho2(bell: BellKind) -> Vec<ClosedForm> {
    match bell {
        BellKind::PsiPlus => vec![
            p("rho2/rho4:psi+ concurrence", Metric::Concurrence, |p| 1.0 - p / 3.0),
            p("rho2/rho4:psi+ fidelity", Metric::Fidelity, |p| 1.0 - 2.0 * p / 9.0),
            p("rho2/rho4:psi+ mixedness", Metric::LinearEntropy, |p| p * (8.0 / 9.0 - 8.0 * p / 27.0)),
            p("rho2/rho4:psi+ Bell-CHSH M", Metric::MValue, |p| 7.0 * p * p / 9.0 - 10.0 * p / 3.0 + 4.0),
        ],
        _ => vec![
            p("rho2/rho4:psi- concurrence", Metric::Concurrence, |p| 1.0 - p / 3.0),
            p("rho2/rho4:psi- fidelity", Metric::Fidelity, |p| {
                0.5 + sq(5.0 * p / 3.0 - 1.0).sqrt() / 3.0 + sq(2.0 * p / 3.0 - 1.0).sqrt() / 6.0
            }),
            p("rho2/rho4:psi- mixedness", Metric::LinearEntropy, |p| 8.0 * p * (1.0 / 3.0 - 7.0 * p / 27.0)),
            p("rho2/rho4:psi- Bell-CHSH M", Metric::MValue, |p| 79.0 * p * p / 9.0 - 34.0 * p / 2.0 + 4.0),
        ],
    }
}

fn werner() -> Vec<ClosedForm> {
    vec![
        p("werner concurrence, branch m > -1/2", Metric::Concurrence, |m| (2.0 * m + 1.0) / 6.0),
        ClosedForm {
            validity: Validity { hi: 0.5, hi_open: true, ..ALL },
            ..p("werner concurrence, branch m < 1/2", Metric::Concurrence, |m| (1.0 - 2.0 * m) / 2.0)
        },
        p("werner mixedness", Metric::LinearEntropy, |m| 8.0 / 9.0 - 16.0 * m * m / 9.0 + 8.0 * m / 9.0),
        p("werner fidelity", Metric::Fidelity, |m| (1.0 + 2.0 * m) / 3.0),
    ]
}

fn mems() -> Vec<ClosedForm> {
    vec![
        p("w-mems fidelity", Metric::Fidelity, |_| 7.0 / 9.0),
        p("w-mems mixedness", Metric::LinearEntropy, |_| 16.0 / 27.0),
    ]
}

// rho5:phi+ printed matrix: alpha = r/6, delta = (1-r)/2
fn c1_ad(r: f64) -> (f64, f64) {
    (r / 6.0, (1.0 - r) / 2.0)
}

fn c1_general() -> Vec<ClosedForm> {
    vec![
        p("c1 concurrence (alpha, delta)", Metric::Concurrence, |r| {
            let (a, d) = c1_ad(r);
            let d1 = 9.0 * a * a / 2.0 + 2.0 * a * d + 2.0 * d * d;
            let d2 = 81.0 * a.powi(4) + 72.0 * a.powi(3) * d - 168.0 * a * a * d * d
                + 32.0 * a * d.powi(3)
                + 16.0 * d.powi(4);
            let d3 = a * a;
            (d1 + d2.sqrt() / 2.0).sqrt() - (d1 - d2.sqrt() / 2.0).sqrt() - d3.sqrt()
        }),
        form(
            "c1 ttdagger eigenvalues (alpha, delta)",
            Metric::MValue,
            Eval::ParamTriple(|r| {
                let (a, d) = c1_ad(r);
                [sq(2.0 * a - 2.0 * d), sq(4.0 * a + 2.0 * d), sq(4.0 * a - 2.0 * d)]
            }),
        ),
        p("c1 fidelity (alpha, delta)", Metric::Fidelity, |r| {
            let (a, d) = c1_ad(r);
            0.5 + (2.0 * a - 2.0 * d).abs() / 6.0 + (2.0 * d + 4.0 * a).abs() / 6.0 + (-2.0 * d + 4.0 * a).abs() / 6.0
        }),
        p("c1 mixedness (alpha, delta)", Metric::LinearEntropy, |r| {
            let (a, d) = c1_ad(r);
            4.0 / 3.0 - 8.0 / 3.0 * sq(a + d) - 32.0 * a * a - 8.0 / 3.0 * d * d
        }),
        p("c1:phi+ concurrence in r", Metric::Concurrence, |r| {
            let u = 18.0 * r * r + 48.0 * r * (1.0 - r) / 2.0 + 288.0 * sq(1.0 - r) / 4.0;
            let v = -135.0 * r.powi(4) + 72.0 * r.powi(3) + 408.0 * r * r - 480.0 * r + 144.0;
            (u + 6.0 * v.sqrt()).sqrt() / 12.0 - (u - 6.0 * v.sqrt()).sqrt() / 12.0 - (r * r).sqrt() / 6.0
        }),
        p("c1:phi+ fidelity in r", Metric::Fidelity, |r| {
            0.5 + ((4.0 * r / 3.0 - 1.0).abs() + (1.0 - r / 3.0).abs() + (-1.0 + 5.0 * r / 3.0).abs()) / 6.0
        }),
        p("c1:phi+ mixedness in r", Metric::LinearEntropy, |r| -50.0 * r * r / 27.0 + 20.0 * r / 9.0),
        p("c1:phi+ Bell-CHSH M", Metric::MValue, |r| sq(4.0 * r / 3.0 - 1.0) + sq(1.0 - r / 3.0)),
    ]
}

fn c1_minus() -> Vec<ClosedForm> {
    vec![p("c1:phi- Bell-CHSH M", Metric::MValue, |r| sq(1.0 - r / 3.0) + sq(-1.0 + 5.0 * r / 3.0))]
}

// rho6 printed matrices: alpha = r'/6, beta = (1-r')/2
fn c2_ab(r: f64) -> (f64, f64) {
    (r / 6.0, (1.0 - r) / 2.0)
}

fn c2a() -> Vec<ClosedForm> {
    vec![
        p("c2a concurrence (alpha, beta)", Metric::Concurrence, |r| {
            let (a, b) = c2_ab(r);
            let f1 = 9.0 * a * a / 2.0 + 8.0 * a * b + 2.0 * b * b;
            let f2 = 81.0 * a.powi(4)
                + 288.0 * a.powi(3) * b
                + 312.0 * a * a * b * b
                + 128.0 * a * b.powi(3)
                + 16.0 * b.powi(4);
            let f3 = a * a;
            (f1 + f2.sqrt() / 2.0).sqrt() - (f1 - f2.sqrt() / 2.0).sqrt() - f3.sqrt()
        }),
        form(
            "c2a ttdagger eigenvalues (alpha, beta)",
            Metric::MValue,
            Eval::ParamTriple(|r| {
                let (a, b) = c2_ab(r);
                [sq(4.0 * a + 2.0 * b), sq(4.0 * a + 2.0 * b), sq(2.0 * a + 2.0 * b)]
            }),
        ),
        p("c2a fidelity (alpha, beta)", Metric::Fidelity, |r| {
            let (a, b) = c2_ab(r);
            0.5 + (4.0 * a + 2.0 * b).abs() / 3.0 + (2.0 * a + 2.0 * b).abs() / 6.0
        }),
        p("c2a mixedness (alpha, beta)", Metric::LinearEntropy, |r| {
            let (a, b) = c2_ab(r);
            4.0 / 3.0 - 40.0 * a * a / 3.0 - 16.0 / 3.0 * sq(2.0 * a + b)
        }),
        p("c2a concurrence in r'", Metric::Concurrence, |r| {
            let x = 18.0 * r * r + 192.0 * r * (1.0 - r) / 2.0 + 288.0 * sq(1.0 - r) / 2.0;
            let y = -15.0 * r.powi(4) + 48.0 * r.powi(3) + 24.0 * r * r - 192.0 * r + 144.0;
            (x + 6.0 * y.sqrt()) / 12.0 - (x - 6.0 * y.sqrt()) / 12.0 - (r * r).sqrt() / 6.0
        }),
        p("c2a mixedness in r'", Metric::LinearEntropy, |r| 8.0 * r / 9.0 - 14.0 * r * r / 27.0),
        p("c2a fidelity in r'", Metric::Fidelity, |r| {
            0.5 + (1.0 - r / 3.0).abs() / 3.0 + (2.0 * r / 3.0 - 1.0).abs() / 6.0
        }),
    ]
}

fn c2b() -> Vec<ClosedForm> {
    vec![
        p("c2b concurrence (alpha, beta)", Metric::Concurrence, |r| {
            let (a, b) = c2_ab(r);
            2.0 * (a * a).sqrt() - 2.0 * (b * b).sqrt()
        }),
        form(
            "c2b ttdagger eigenvalues (alpha, beta)",
            Metric::MValue,
            Eval::ParamTriple(|r| {
                let (a, b) = c2_ab(r);
                [sq(4.0 * a - 2.0 * b), sq(4.0 * a - 2.0 * b), sq(2.0 * a + 2.0 * b)]
            }),
        ),
        p("c2b fidelity (alpha, beta)", Metric::Fidelity, |r| {
            let (a, b) = c2_ab(r);
            0.5 + (4.0 * a - 2.0 * b).abs() / 3.0 + (2.0 * a + 2.0 * b).abs() / 6.0
        }),
        p("c2b mixedness (alpha, beta)", Metric::LinearEntropy, |r| {
            let (a, b) = c2_ab(r);
            4.0 / 3.0 - 104.0 * a * a / 3.0 - 16.0 * b * b / 3.0
        }),
        p("c2b concurrence in r'", Metric::Concurrence, |r| (r * r).sqrt() / 3.0 - 2.0 * ((1.0 - r) / 2.0).abs()),
        p("c2b fidelity in r'", Metric::Fidelity, |r| {
            0.5 + (2.0 * r / 3.0 - 1.0).abs() / 6.0 + (5.0 * r / 3.0 - 1.0).abs() / 3.0
        }),
        p("c2b mixedness in r'", Metric::LinearEntropy, |r| 8.0 * r / 3.0 - 62.0 * r * r / 27.0),
    ]
}

// tau printed matrices: alpha = 1/4, beta = (1-s)/4
fn tau_ab(s: f64) -> (f64, f64) {
    (0.25, (1.0 - s) / 4.0)
}

fn tau_plus_general() -> Vec<ClosedForm> {
    vec![
        p("tau:phi+ concurrence (alpha, beta)", Metric::Concurrence, |s| {
            let (a, b) = tau_ab(s);
            let r = 2.0 * (2.0 * a * (a + b)).sqrt();
            (a + b).sqrt() * ((3.0 * a + b + r).sqrt() - (3.0 * a + b - r).sqrt())
        }),
        p("tau:phi+ fidelity (alpha, beta)", Metric::Fidelity, |s| {
            let (a, b) = tau_ab(s);
            0.5 + sq(a + b).sqrt() / 3.0 + 2.0 / 3.0 * (2.0 * (a * a + b * b)).sqrt()
        }),
        p("tau:phi+ mixedness (alpha, beta)", Metric::LinearEntropy, |s| {
            let (a, b) = tau_ab(s);
            4.0 / 3.0 - 16.0 * a * a + 16.0 / 3.0 * (a * b - 2.0 * b * b)
        }),
    ]
}

fn tau_minus_general() -> Vec<ClosedForm> {
    vec![
        p("tau:phi- concurrence (alpha, beta)", Metric::Concurrence, |s| {
            let (a, b) = tau_ab(s);
            let u = 3.0 * a * a - 4.0 * a * b + 9.0 * b * b;
            let v = 2.0 * a.powi(4) - 10.0 * a.powi(3) * b + 6.0 * sq(a * b) + 18.0 * a * b.powi(3);
            (u + 2.0 * v.sqrt()).sqrt() - (u - 2.0 * v.sqrt()).sqrt()
        }),
        p("tau:phi- fidelity (alpha, beta)", Metric::Fidelity, |s| {
            let (a, b) = tau_ab(s);
            let u = 2.0 * a * a - 4.0 * a * b + 6.0 * b * b;
            let v = 4.0 * 2f64.sqrt() * (b * b - a * b);
            0.5 + sq(a + b).sqrt() / 3.0 + ((u + v).sqrt() + (u - v).sqrt()) / 3.0
        }),
        p("tau:phi- mixedness (alpha, beta)", Metric::LinearEntropy, |s| {
            let (a, b) = tau_ab(s);
            4.0 / 3.0 - 16.0 * a * a + 80.0 / 3.0 * a * b - 32.0 * b * b
        }),
    ]
}

fn tau_plus_in_s(tag: &'static [&'static str; 4]) -> Vec<ClosedForm> {
    vec![
        p(tag[0], Metric::Concurrence, |s| {
            let r = 0.5 * (2.0 + 2.0 * s).sqrt();
            ((1.0 + s) / 4.0).sqrt() * (0.75 + s / 4.0 + r).sqrt() - (0.75 + s / 4.0 - r).sqrt()
        }),
        p(tag[1], Metric::Fidelity, |s| 0.5 + (0.25 * sq(1.0 + s)).sqrt() / 3.0 + (2.0 * s * s + 2.0).sqrt() / 6.0),
        p(tag[2], Metric::LinearEntropy, |s| (1.0 + s - 2.0 * s * s) / 3.0),
        p(tag[3], Metric::MValue, |s| (1.0 + s * s) / 2.0),
    ]
}

fn tau_minus_in_s(tag: &'static [&'static str; 4]) -> Vec<ClosedForm> {
    vec![
        p(tag[0], Metric::Concurrence, |s| {
            let u = 3.0 - 4.0 * s + 9.0 * s * s;
            let w = 2.0 * (18.0 * s.powi(3) + 6.0 * s * s - 10.0 * s + 2.0).sqrt();
            0.25 * ((u + w).sqrt() - (u - w).sqrt())
        }),
        p(tag[1], Metric::Fidelity, |s| {
            let k = 4.0 * 2f64.sqrt();
            let base = 2.0 - 4.0 * s + 6.0 * s * s;
            0.5 + sq((3.0 * s + 1.0) / 4.0).sqrt() / 3.0
                + ((k * (s * s - s) + base).sqrt() + (k * (s - s * s) + base).sqrt()) / 12.0
        }),
        p(tag[2], Metric::LinearEntropy, |s| (1.0 + 5.0 * s) / 3.0 - 2.0 * s * s),
        p(tag[3], Metric::MValue, |s| 2f64.sqrt() * s * (1.0 - s) + 0.5 + s * (1.5 * s - 1.0)),
    ]
}

const TAU_PLUS: [&str; 4] =
    ["tau:phi+ concurrence in s", "tau:phi+ fidelity in s", "tau:phi+ mixedness in s", "tau:phi+ Bell-CHSH M"];
const TAU_MINUS: [&str; 4] =
    ["tau:phi- concurrence in s", "tau:phi- fidelity in s", "tau:phi- mixedness in s", "tau:phi- Bell-CHSH M"];
const TAU_PSI_PLUS: [&str; 4] = [
    "tau:phi+ concurrence in s, claimed equal for psi+",
    "tau:phi+ fidelity in s, claimed equal for psi+",
    "tau:phi+ mixedness in s, claimed equal for psi+",
    "tau:phi+ Bell-CHSH M, claimed equal for psi+",
];
const TAU_PSI_MINUS: [&str; 4] = [
    "tau:phi- concurrence in s, claimed equal for psi-",
    "tau:phi- fidelity in s, claimed equal for psi-",
    "tau:phi- mixedness in s, claimed equal for psi-",
    "tau:phi- Bell-CHSH M, claimed equal for psi-",
];

/// Every printed closed form that applies to a family selector.
pub fn forms_for(sel: FamilySelector) -> Vec<ClosedForm> {
    use BellKind::*;
    use FamilyTag::*;
    let x_type = matches!(sel.family, Rho1 | Rho2 | Rho3 | Rho4 | RhoG | Werner | MemsW | MemsWbar);
    let mut v = if x_type { x_generic() } else { Vec::new() };
    v.extend(match (sel.family, sel.bell) {
        (Rho1 | Rho3, Some(b)) => rho1(b),
        (Rho2 | Rho4, Some(b)) => rho2(b),
        (RhoG, Some(PhiPlus)) => vec![p("ghz-mixture fidelity", Metric::Fidelity, |t| 2.0 / 3.0 + (1.0 - t) / 3.0)],
        (Werner, _) => werner(),
        (MemsW | MemsWbar, _) => mems(),
        (Rho5, Some(PhiPlus)) => c1_general(),
        (Rho5, _) => c1_minus(),
        (Rho6, Some(PsiPlus)) => c2a(),
        (Rho6, _) => c2b(),
        (Tau1, Some(PhiPlus)) => [tau_plus_general(), tau_plus_in_s(&TAU_PLUS)].concat(),
        (Tau1, _) => [tau_minus_general(), tau_minus_in_s(&TAU_MINUS)].concat(),
        (Tau2, Some(PsiPlus)) => tau_plus_in_s(&TAU_PSI_PLUS),
        (Tau2, _) => tau_minus_in_s(&TAU_PSI_MINUS),
        _ => Vec::new(),
    });
    v
}
