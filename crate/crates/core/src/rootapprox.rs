//! Self-similar nested root approximants
//! `A x^alpha (((1 + A1 x^e1)^n1 + A2 x^e2)^n2 + ... + Ak x^ek)^nk`
//! and weighted mixtures of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{bisect_secant, bracket_positive, ROOT_TOL};
use crate::scalar::Real;
use crate::series::{grid_index, AsymptoticForm, GeneralizedSeries, GridSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    #[serde(rename = "A")]
    pub amplitude: f64,
    #[serde(rename = "e")]
    pub exponent: f64,
    #[serde(rename = "n")]
    pub power: f64,
}

impl Level {
    pub fn new(amplitude: f64, exponent: f64, power: f64) -> Self {
        Level { amplitude, exponent, power }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prefactor {
    pub amplitude: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRoot")]
pub struct NestedRootApproximant {
    pub prefactor: Prefactor,
    /// Innermost first.
    pub levels: Vec<Level>,
    /// Closed interval on which the brackets are required to stay
    /// non-negative; `None` means `[0, inf)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<(f64, f64)>,
}

#[derive(Deserialize)]
struct RawRoot {
    prefactor: Prefactor,
    levels: Vec<Level>,
    #[serde(default)]
    domain: Option<(f64, f64)>,
}

impl TryFrom<RawRoot> for NestedRootApproximant {
    type Error = Error;
    fn try_from(r: RawRoot) -> Result<Self> {
        NestedRootApproximant::new(r.prefactor.amplitude, r.prefactor.exponent, r.levels, r.domain)
    }
}

fn is_integer(p: f64) -> bool {
    p == p.trunc()
}

// rounding guard so that e.g. 1 - t/t_c at t = t_c is not reported as negative
const BRACKET_ROUNDING: f64 = 1e-14;

impl NestedRootApproximant {
    pub fn new(amplitude: f64, alpha: f64, levels: Vec<Level>, domain: Option<(f64, f64)>) -> Result<Self> {
        let root = Self::unchecked(amplitude, alpha, levels, domain);
        root.validate()?;
        Ok(root)
    }

    fn unchecked(amplitude: f64, alpha: f64, levels: Vec<Level>, domain: Option<(f64, f64)>) -> Self {
        NestedRootApproximant { prefactor: Prefactor { amplitude, exponent: alpha }, levels, domain }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConstruction(m.to_string()));
        if !(self.prefactor.amplitude.is_finite() && self.prefactor.amplitude != 0.0) {
            return bad("prefactor amplitude must be finite and non-zero");
        }
        if self.levels.is_empty() {
            return bad("at least one level is required");
        }
        for l in &self.levels {
            if !(l.amplitude.is_finite() && l.exponent.is_finite() && l.power.is_finite()) {
                return bad("non-finite level parameter");
            }
            if l.exponent <= 0.0 {
                return bad("inner exponents must be positive");
            }
        }
        if self.levels.windows(2).any(|w| w[1].exponent <= w[0].exponent) {
            return bad("inner exponents must be strictly increasing");
        }
        if let Some((lo, hi)) = self.domain {
            if !(lo >= 0.0 && hi > lo) {
                return bad("domain must satisfy 0 <= lo < hi");
            }
        }
        for x in self.sample_grid() {
            self.evaluate(x)?;
        }
        Ok(())
    }

    fn sample_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.domain.unwrap_or((0.0, 1e8));
        let mut xs = vec![lo, hi];
        xs.extend((0..=200).map(|i| lo + (hi - lo) * i as f64 / 200.0));
        xs.extend((0..=140).map(|i| 10f64.powf(-6.0 + 0.1 * i as f64)).filter(|x| *x > lo && *x < hi));
        xs
    }

    /// Number of levels `k`.
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// Unchecked evaluation, generic over plain values and jets.
    pub fn eval<T: Real>(&self, x: T) -> T {
        let mut b = T::cst(1.0);
        for l in &self.levels {
            b = (b + x.powf(l.exponent) * l.amplitude).powf(l.power);
        }
        let p = &self.prefactor;
        if p.exponent == 0.0 {
            b * p.amplitude
        } else {
            b * x.powf(p.exponent) * p.amplitude
        }
    }

    /// Evaluation with bracket-sign checks.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::Domain { level: 0, x });
        }
        let mut b = 1.0_f64;
        for (i, l) in self.levels.iter().enumerate() {
            let t = l.amplitude * x.powf(l.exponent);
            let mut s = b + t;
            if s < 0.0 && s > -BRACKET_ROUNDING * (b.abs() + t.abs()) {
                s = 0.0;
            }
            if s < 0.0 && !is_integer(l.power) {
                return Err(Error::Domain { level: i + 1, x });
            }
            b = Real::powf(s, l.power);
        }
        Ok(self.prefactor.amplitude * x.powf(self.prefactor.exponent) * b)
    }

    /// Small-variable expansion on a grid of spacing `step` through `order`.
    pub fn expand_small(&self, order: usize, step: f64) -> Result<GeneralizedSeries> {
        let mut b = GridSeries::constant(step, 1.0, order);
        for l in &self.levels {
            let idx = grid_index(l.exponent, step).ok_or(Error::GridMismatch(l.exponent, step))?;
            if idx <= order {
                b.coeffs[idx] += l.amplitude;
            }
            b = b.powf(l.power)?;
        }
        GeneralizedSeries::new(self.prefactor.amplitude, self.prefactor.exponent, step, b.coeffs)
    }

    /// Large-variable expansion with up to `terms` terms, exponents descending.
    pub fn asymptotic_large(&self, terms: usize) -> Result<AsymptoticForm> {
        large_expansion(terms, self.max_exponent(), |depth| self.power_sum(depth))
    }

    fn max_exponent(&self) -> f64 {
        self.levels.last().map_or(1.0, |l| l.exponent)
    }

    fn power_sum(&self, depth: f64) -> Result<PowerSum> {
        let mut b = PowerSum::new(vec![(1.0, 0.0)], depth);
        for (i, l) in self.levels.iter().enumerate() {
            let t = PowerSum::new(vec![(l.amplitude, l.exponent)], depth);
            b = b.add(&t, depth)?.powf(l.power, depth, i + 1)?;
        }
        Ok(b.scale(self.prefactor.amplitude, self.prefactor.exponent))
    }
}

fn large_expansion<F: Fn(f64) -> Result<PowerSum>>(terms: usize, max_exponent: f64, build: F) -> Result<AsymptoticForm> {
    if terms == 0 {
        return Err(Error::Parameter("at least one asymptotic term is required".into()));
    }
    let mut depth = 1.0;
    let mut ps = build(depth)?;
    // the expansion is exact down to `depth` below the leading exponent;
    // widen until enough terms appear or the expansion terminates
    for _ in 0..12 {
        if ps.terms.len() >= terms {
            break;
        }
        depth *= 2.0;
        let next = build(depth)?;
        let span = match (next.terms.first(), next.terms.last()) {
            (Some(a), Some(b)) => a.1 - b.1,
            _ => 0.0,
        };
        let done = next.terms.len() == ps.terms.len() && depth > 2.0 * (span + max_exponent);
        ps = next;
        if done {
            break;
        }
    }
    let kept: Vec<(f64, f64)> = ps.terms.into_iter().take(terms).collect();
    AsymptoticForm::new(kept)
}

/// Sparse sum `sum c_i x^{p_i}` truncated `depth` below its leading exponent.
#[derive(Debug, Clone)]
struct PowerSum {
    terms: Vec<(f64, f64)>,
}

const EXP_TOL: f64 = 1e-9;
const CANCEL_TOL: f64 = 1e-12;

impl PowerSum {
    fn new(raw: Vec<(f64, f64)>, depth: f64) -> Self {
        let mut raw: Vec<(f64, f64)> = raw.into_iter().filter(|(c, _)| *c != 0.0).collect();
        raw.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut terms: Vec<(f64, f64)> = Vec::new();
        let mut scale = 0.0_f64;
        for (c, p) in raw {
            match terms.last_mut() {
                Some(last) if (last.1 - p).abs() < EXP_TOL => {
                    last.0 += c;
                    scale = scale.max(c.abs());
                }
                _ => {
                    if let Some(last) = terms.last() {
                        if last.0.abs() <= CANCEL_TOL * scale {
                            terms.pop();
                        }
                    }
                    terms.push((c, p));
                    scale = c.abs();
                }
            }
        }
        if let Some(last) = terms.last() {
            if last.0.abs() <= CANCEL_TOL * scale {
                terms.pop();
            }
        }
        if let Some(&(_, lead)) = terms.first() {
            terms.retain(|(_, p)| *p >= lead - depth - EXP_TOL);
        }
        PowerSum { terms }
    }

    fn lead(&self) -> Option<(f64, f64)> {
        self.terms.first().copied()
    }

    fn scale(mut self, k: f64, shift: f64) -> Self {
        for t in &mut self.terms {
            t.0 *= k;
            t.1 += shift;
        }
        self
    }

    fn add(&self, other: &Self, depth: f64) -> Result<Self> {
        let top = match (self.lead(), other.lead()) {
            (Some(a), Some(b)) => a.1.max(b.1),
            (Some(a), None) | (None, Some(a)) => a.1,
            (None, None) => return Ok(self.clone()),
        };
        let mut all = self.terms.clone();
        all.extend_from_slice(&other.terms);
        let sum = PowerSum::new(all, depth);
        match sum.lead() {
            Some((_, p)) if (p - top).abs() < EXP_TOL => Ok(sum),
            _ => Err(Error::AmbiguousAsymptote(format!(
                "dominant contributions at exponent {top} cancel"
            ))),
        }
    }

    fn mul(&self, other: &Self, depth: f64) -> Self {
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                all.push((a * b, p + q));
            }
        }
        PowerSum::new(all, depth)
    }

    fn powf(&self, n: f64, depth: f64, level: usize) -> Result<Self> {
        let Some((c0, p0)) = self.lead() else { return Ok(self.clone()) };
        if c0 < 0.0 && !is_integer(n) {
            return Err(Error::Domain { level, x: f64::INFINITY });
        }
        let rest = PowerSum { terms: self.terms[1..].iter().map(|(c, p)| (c / c0, p - p0)).collect() };
        let mut out = vec![(1.0, 0.0)];
        if let Some(&(_, gap)) = rest.terms.first() {
            let kmax = (depth / -gap).floor() as usize;
            let mut binom = 1.0;
            let mut rk = PowerSum { terms: vec![(1.0, 0.0)] };
            for k in 1..=kmax {
                binom *= (n - (k - 1) as f64) / k as f64;
                if binom == 0.0 {
                    break;
                }
                rk = rk.mul(&rest, depth);
                out.extend(rk.terms.iter().map(|(c, p)| (binom * c, *p)));
            }
        }
        let lead_value = Real::powf(c0, n);
        Ok(PowerSum::new(out, depth).scale(lead_value, p0 * n))
    }
}

/// Powers `n_1..n_k` from the integer-template assignment rules: the first
/// `k - p` from `(j+1)/j`, the next ones from the exponent gaps, and the
/// outermost from the leading large-variable exponent.
pub fn canonical_powers(k: usize, p: usize, alpha: f64, betas: &[f64]) -> Result<Vec<f64>> {
    if p >= k {
        return Err(Error::OrderDeficit(format!("root order k = {k} must exceed the {p} asymptotic terms")));
    }
    if p == 0 {
        return Err(Error::Parameter("at least one large-variable exponent is required".into()));
    }
    if betas.len() != p {
        return Err(Error::Parameter(format!("expected {p} exponents, got {}", betas.len())));
    }
    if betas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("exponents must be strictly descending".into()));
    }
    let beta = |i: usize| betas[i - 1];
    let mut n = vec![0.0; k];
    for j in 1..=k - p {
        n[j - 1] = (j + 1) as f64 / j as f64;
    }
    for j in k - p + 1..k {
        n[j - 1] = (j as f64 + 1.0 + beta(k - j + 1) - beta(k - j)) / j as f64;
    }
    n[k - 1] = (beta(1) - alpha) / k as f64;
    Ok(n)
}

/// Template for one level: fixed inner exponent, optionally fixed power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelTemplate {
    #[serde(rename = "e")]
    pub exponent: f64,
    #[serde(rename = "n", default)]
    pub power: Option<f64>,
}

const EXPONENT_MATCH_TOL: f64 = 1e-9;

/// Calibrate a root approximant. The prefactor comes from `small`. Working
/// inward from the outermost level, the leading large-variable term fixes
/// `A_k` (and `n_k` when free); each following term fixes the next inner
/// level's power from the exponent gap and its amplitude from the amplitude
/// ratio. Amplitudes left over are matched to small-variable coefficients
/// at their own exponents.
pub fn match_parameters(
    template: &[LevelTemplate],
    small: &GeneralizedSeries,
    large: &AsymptoticForm,
) -> Result<NestedRootApproximant> {
    let k = template.len();
    if k == 0 {
        return Err(Error::Parameter("empty template".into()));
    }
    let e: Vec<f64> = template.iter().map(|t| t.exponent).collect();
    let mut pows: Vec<Option<f64>> = template.iter().map(|t| t.power).collect();
    let mut amps: Vec<Option<f64>> = vec![None; k];
    let (pref, alpha) = (small.amplitude, small.alpha);
    let terms = &large.terms;

    let (b1, beta1) = terms[0];
    match pows[k - 1] {
        None => pows[k - 1] = Some((beta1 - alpha) / e[k - 1]),
        Some(n) => {
            if (alpha + n * e[k - 1] - beta1).abs() > EXPONENT_MATCH_TOL * beta1.abs().max(1.0) {
                return Err(Error::UnmatchableAsymptote(format!(
                    "outer level gives exponent {} but the leading term has {beta1}",
                    alpha + n * e[k - 1]
                )));
            }
        }
    }
    let nk = pows[k - 1].unwrap();
    let ratio = b1 / pref;
    if ratio <= 0.0 {
        return Err(Error::UnmatchableAsymptote(format!(
            "leading amplitude ratio {ratio} cannot be a power of a positive amplitude"
        )));
    }
    amps[k - 1] = Some(ratio.powf(1.0 / nk));

    // level j (1-based) is current: its amplitude and power are known
    let mut j = k;
    for m in 1..terms.len() {
        if j == 1 {
            break;
        }
        let gap = terms[m].1 - terms[m - 1].1;
        let rho = terms[m].0 / terms[m - 1].0;
        let inner = j - 2;
        match pows[inner] {
            None => pows[inner] = Some((gap + e[j - 1]) / e[inner]),
            Some(n) => {
                let g = n * e[inner] - e[j - 1];
                if (g - gap).abs() > EXPONENT_MATCH_TOL * gap.abs().max(1.0) {
                    return Err(Error::UnmatchableAsymptote(format!(
                        "exponent gap {gap} cannot come from level {} (gives {g})",
                        inner + 1
                    )));
                }
            }
        }
        let (aj, nj) = (amps[j - 1].unwrap(), pows[j - 1].unwrap());
        // A_{j-1}^{n_{j-1}} = rho A_j / n_j; the sign of rho is not trusted
        let lead = (rho * aj / nj).abs();
        amps[inner] = Some(lead.powf(1.0 / pows[inner].unwrap()));
        j -= 1;
    }

    if let Some(i) = pows.iter().position(|p| p.is_none()) {
        return Err(Error::MatchingFailure(format!(
            "power of level {} is not fixed by the template or the asymptotic terms",
            i + 1
        )));
    }
    let pows: Vec<f64> = pows.into_iter().map(|p| p.unwrap()).collect();

    let mut levels: Vec<Level> = (0..k).map(|i| Level::new(amps[i].unwrap_or(0.0), e[i], pows[i])).collect();
    for i in 0..k {
        if amps[i].is_some() {
            continue;
        }
        let idx = grid_index(e[i], small.step).ok_or(Error::GridMismatch(e[i], small.step))?;
        if idx > small.order() {
            return Err(Error::InsufficientCoefficients { needed: idx, available: small.order() });
        }
        let target = small.coeffs[idx];
        let residual = |a: f64| -> f64 {
            let mut trial = levels.clone();
            trial[i].amplitude = a;
            NestedRootApproximant::unchecked(1.0, 0.0, trial, None)
                .expand_small(idx, small.step)
                .map(|s| s.coeffs[idx] - target)
                .unwrap_or(f64::NAN)
        };
        let a = match bracket_positive(&residual, 1e-6, 1e6, 8) {
            Some((lo, hi)) => bisect_secant(&residual, lo, hi, ROOT_TOL)?,
            None => {
                let neg = |a: f64| residual(-a);
                let (lo, hi) = bracket_positive(neg, 1e-6, 1e6, 8).ok_or_else(|| {
                    Error::MatchingFailure(format!("no bracket for the amplitude of level {}", i + 1))
                })?;
                -bisect_secant(|a| residual(-a), lo, hi, ROOT_TOL)?
            }
        };
        levels[i].amplitude = a;
    }
    NestedRootApproximant::new(pref, alpha, levels, None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedRoot {
    pub weight: f64,
    pub root: NestedRootApproximant,
}

/// Weighted sum of root approximants; weights sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<WeightedRoot>", into = "Vec<WeightedRoot>")]
pub struct RootMixture {
    pub components: Vec<WeightedRoot>,
}

impl TryFrom<Vec<WeightedRoot>> for RootMixture {
    type Error = Error;
    fn try_from(c: Vec<WeightedRoot>) -> Result<Self> {
        RootMixture::new(c)
    }
}

impl From<RootMixture> for Vec<WeightedRoot> {
    fn from(m: RootMixture) -> Self {
        m.components
    }
}

impl From<NestedRootApproximant> for RootMixture {
    fn from(root: NestedRootApproximant) -> Self {
        RootMixture::single(root)
    }
}

impl RootMixture {
    pub fn new(components: Vec<WeightedRoot>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidConstruction("mixture needs at least one component".into()));
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConstruction(format!("mixture weights sum to {total}, not 1")));
        }
        Ok(RootMixture { components })
    }

    pub fn single(root: NestedRootApproximant) -> Self {
        RootMixture { components: vec![WeightedRoot { weight: 1.0, root }] }
    }

    /// Equal-weight average.
    pub fn average(roots: Vec<NestedRootApproximant>) -> Result<Self> {
        let w = 1.0 / roots.len().max(1) as f64;
        let mut components: Vec<WeightedRoot> = roots.into_iter().map(|root| WeightedRoot { weight: w, root }).collect();
        // absorb rounding so the weights sum to one exactly
        let others = w * (components.len() as f64 - 1.0);
        if let Some(last) = components.last_mut() {
            last.weight = 1.0 - others;
        }
        RootMixture::new(components)
    }

    pub fn eval<T: Real>(&self, x: T) -> T {
        let mut it = self.components.iter();
        let first = it.next().expect("non-empty mixture");
        it.fold(first.root.eval(x) * first.weight, |acc, c| acc + c.root.eval(x) * c.weight)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let mut sum = 0.0;
        for c in &self.components {
            sum += c.weight * c.root.evaluate(x)?;
        }
        Ok(sum)
    }

    pub fn expand_small(&self, order: usize, step: f64) -> Result<GeneralizedSeries> {
        let mut acc: Option<GeneralizedSeries> = None;
        for c in &self.components {
            let s = c.root.expand_small(order, step)?.scale(c.weight)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.add(&s)?,
            });
        }
        Ok(acc.expect("non-empty mixture"))
    }

    pub fn asymptotic_large(&self, terms: usize) -> Result<AsymptoticForm> {
        let max_e = self.components.iter().map(|c| c.root.max_exponent()).fold(0.0, f64::max);
        large_expansion(terms, max_e, |depth| {
            let mut acc = PowerSum { terms: vec![] };
            for c in &self.components {
                let s = c.root.power_sum(depth)?.scale(c.weight, 0.0);
                acc = acc.add(&s, depth)?;
            }
            Ok(acc)
        })
    }
}
