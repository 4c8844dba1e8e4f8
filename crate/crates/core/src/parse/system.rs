//! Parametrizations and the problem-file loader.

use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;

use super::{parse_fraction, ParseError};
use crate::budget::Budget;
use crate::coeff::{is_prime, Field, Zp, QQ};
use crate::elim::{divide_exact, poly_gcd, poly_lcm, ElimError};
use crate::ring::{Polynomial, Ring, RingError};

/// `x_i = p_i / q` over a coefficient field: numerators and a common
/// denominator in the parameter ring, plus the names of the targets.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<F: Field> {
    params: Arc<Ring>,
    targets: Arc<Ring>,
    numerators: Vec<Polynomial<F>>,
    denominator: Polynomial<F>,
}

impl<F: Field> Parametrization<F> {
    /// `x_i = f_i` for polynomials `f_i` sharing one parameter ring.
    pub fn polynomial(targets: Arc<Ring>, coordinates: Vec<Polynomial<F>>) -> Result<Self, ParseError> {
        let first = coordinates
            .first()
            .ok_or_else(|| ParseError::InconsistentArity("no coordinates".into()))?;
        let one = Polynomial::one(first.ring(), first.field());
        Self::rational(targets, coordinates, one)
    }

    /// `x_i = p_i / q`.
    pub fn rational(
        targets: Arc<Ring>,
        numerators: Vec<Polynomial<F>>,
        denominator: Polynomial<F>,
    ) -> Result<Self, ParseError> {
        let params = denominator.ring().clone();
        if numerators.is_empty() || params.nvars() == 0 {
            return Err(ParseError::InconsistentArity(
                "need at least one coordinate and one parameter".into(),
            ));
        }
        if numerators.len() != targets.nvars() {
            return Err(ParseError::InconsistentArity(format!(
                "{} targets but {} coordinates",
                targets.nvars(),
                numerators.len()
            )));
        }
        if numerators.iter().any(|p| p.ring() != &params) {
            return Err(RingError::RingMismatch.into());
        }
        if denominator.is_zero() {
            return Err(ParseError::ZeroDenominator("common denominator".into()));
        }
        if let Some(dup) = targets.names().iter().find(|n| params.index_of(n).is_some()) {
            return Err(RingError::DuplicateName(dup.clone()).into());
        }
        Ok(Parametrization {
            params,
            targets,
            numerators,
            denominator,
        })
    }

    pub fn params(&self) -> &Arc<Ring> {
        &self.params
    }

    /// The ring of the implicit equation (targets, unit weights).
    pub fn target_ring(&self) -> &Arc<Ring> {
        &self.targets
    }

    pub fn numerators(&self) -> &[Polynomial<F>] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.denominator
    }

    pub fn field(&self) -> &F {
        self.denominator.field()
    }

    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.numerators.len()
    }

    /// Number of parameters.
    pub fn s(&self) -> usize {
        self.params.nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    /// The coordinates as polynomials, when the denominator is constant.
    pub fn polynomial_coordinates(&self) -> Option<Vec<Polynomial<F>>> {
        if !self.is_polynomial() {
            return None;
        }
        let f = self.field();
        let inv = f.inv(&self.denominator.constant_coeff()).expect("non-zero");
        Some(self.numerators.iter().map(|p| p.scale(&inv)).collect())
    }

    /// Whether `g(p₁/q, …, pₙ/q) = 0`.
    pub fn vanishes_on(&self, g: &Polynomial<F>) -> Result<bool, RingError> {
        if g.ring().nvars() != self.n() {
            return Err(RingError::DimensionMismatch);
        }
        Ok(g.substitute_fraction(&self.numerators, &self.denominator)?.0.is_zero())
    }
}

/// A loaded problem: the reduced coordinate fractions, the split-off
/// constant coordinates and the common-denominator form over ℚ.
#[derive(Clone, Debug)]
pub struct ParamSystem {
    name: String,
    characteristic: u64,
    fractions: Vec<(String, Polynomial<QQ>, Polynomial<QQ>)>,
    constants: Vec<(String, BigRational)>,
    system: Parametrization<QQ>,
}

impl ParamSystem {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// 0, or the prime the problem is posed over.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Every declared non-constant coordinate as a reduced fraction.
    pub fn fractions(&self) -> &[(String, Polynomial<QQ>, Polynomial<QQ>)] {
        &self.fractions
    }

    /// Coordinates that were constant and have been taken out.
    pub fn constants(&self) -> &[(String, BigRational)] {
        &self.constants
    }

    /// The common-denominator form `x_i = p_i / q` over ℚ.
    pub fn over_rationals(&self) -> &Parametrization<QQ> {
        &self.system
    }

    /// The image modulo `p`; `None` if `p` divides a coefficient
    /// denominator or kills the common denominator.
    pub fn over_prime(&self, p: u64) -> Option<Parametrization<Zp>> {
        let zp = Zp::new(p).ok()?;
        let sys = &self.system;
        let den = sys.denominator.reduce_mod(&zp)?;
        if den.is_zero() {
            return None;
        }
        let nums = sys
            .numerators
            .iter()
            .map(|f| f.reduce_mod(&zp))
            .collect::<Option<Vec<_>>>()?;
        Some(Parametrization {
            params: sys.params.clone(),
            targets: sys.targets.clone(),
            numerators: nums,
            denominator: den,
        })
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn s(&self) -> usize {
        self.system.s()
    }

    pub fn is_polynomial(&self) -> bool {
        self.system.is_polynomial()
    }
}

fn syntax(msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos: 0,
        msg: msg.into(),
    }
}

fn elim_to_parse(e: ElimError) -> ParseError {
    match e {
        ElimError::Ring(r) => ParseError::Ring(r),
        other => ParseError::InconsistentArity(other.to_string()),
    }
}

/// Bring `num/den` to lowest terms with a primitive integral denominator of
/// positive leading coefficient.
fn reduce_fraction(
    num: Polynomial<QQ>,
    den: Polynomial<QQ>,
) -> Result<(Polynomial<QQ>, Polynomial<QQ>), ParseError> {
    let sigma = den.ring().default_ordering();
    let (mut num, mut den) = (num, den);
    if !num.is_zero() && !den.is_constant() && !num.is_constant() {
        let g = poly_gcd(&num, &den, &Budget::unlimited()).map_err(elim_to_parse)?;
        if !g.is_constant() {
            num = divide_exact(&num, &g)?.expect("gcd divides the numerator");
            den = divide_exact(&den, &g)?.expect("gcd divides the denominator");
        }
    }
    let prim = den.primitive_part(&sigma);
    let ratio = den.leading_coeff(&sigma)? / prim.leading_coeff(&sigma)?;
    Ok((num.scale(&ratio.recip()), prim))
}

/// Parse a problem from text. Format (line oriented, `#` starts a comment):
///
/// ```text
/// name: enneper          # optional
/// char: 0                # 0 (default) or a prime
/// params: s t
/// x = 3*t - t^3 + 3*s^2*t
/// y = (s^3 - t)/(t^2 - s)
/// ```
pub fn load_problem(text: &str) -> Result<ParamSystem, ParseError> {
    let mut name = String::new();
    let mut characteristic = 0u64;
    let mut params: Option<Arc<Ring>> = None;
    let mut coords: Vec<(String, Polynomial<QQ>, Polynomial<QQ>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: ParseError| e.at_line(line_no);
        if let Some((lhs, rhs)) = line.split_once('=') {
            let ring = params
                .as_ref()
                .ok_or_else(|| at(syntax("`params:` must precede the coordinates")))?;
            let target = lhs.trim();
            let valid = target.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && target.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(at(syntax(format!("invalid target name `{target}`"))));
            }
            let (num, den) = parse_fraction(rhs, ring).map_err(at)?;
            if den.is_zero() {
                return Err(at(ParseError::ZeroDenominator(target.to_string())));
            }
            coords.push((target.to_string(), num, den));
        } else if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "name" => name = value.to_string(),
                "char" => {
                    characteristic = value
                        .parse()
                        .ok()
                        .filter(|&p: &u64| p == 0 || (is_prime(p) && p < 1 << 32))
                        .ok_or_else(|| at(ParseError::BadCharacteristic(value.to_string())))?;
                }
                "params" => {
                    let names: Vec<&str> = value.split_whitespace().collect();
                    if names.is_empty() {
                        return Err(at(ParseError::InconsistentArity("no parameters".into())));
                    }
                    params = Some(Ring::new(names).map_err(|e| at(e.into()))?);
                }
                other => return Err(at(syntax(format!("unknown header `{other}`")))),
            }
        } else {
            return Err(at(syntax("expected `key: value` or `target = expression`")));
        }
    }
    let params = params.ok_or_else(|| syntax("missing `params:` header"))?;
    if coords.is_empty() {
        return Err(ParseError::InconsistentArity("no coordinates".into()));
    }
    for (i, (c, _, _)) in coords.iter().enumerate() {
        if coords[..i].iter().any(|(d, _, _)| d == c) || params.index_of(c).is_some() {
            return Err(RingError::DuplicateName(c.clone()).into());
        }
    }

    let mut fractions = Vec::new();
    let mut constants = Vec::new();
    for (target, num, den) in coords {
        let (num, den) = reduce_fraction(num, den)?;
        if den.is_constant() && num.is_constant() {
            constants.push((target, num.constant_coeff() / den.constant_coeff()));
        } else {
            fractions.push((target, num, den));
        }
    }
    if fractions.is_empty() {
        return Err(ParseError::InconsistentArity("every coordinate is constant".into()));
    }

    let budget = Budget::unlimited();
    let mut q = Polynomial::one(&params, &QQ);
    for (_, _, den) in &fractions {
        q = poly_lcm(&q, den, &budget).map_err(elim_to_parse)?;
    }
    let q = q.primitive_part(&params.default_ordering());
    let numerators = fractions
        .iter()
        .map(|(_, num, den)| {
            let cofactor = divide_exact(&q, den)?.expect("each denominator divides the lcm");
            Ok(num.mul(&cofactor))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    let targets = Ring::new(fractions.iter().map(|(t, _, _)| t.clone()))?;
    let system = Parametrization::rational(targets, numerators, q)?;
    Ok(ParamSystem {
        name,
        characteristic,
        fractions,
        constants,
        system,
    })
}

/// Load a problem file; the name defaults to the file stem.
pub fn load_problem_file(path: impl AsRef<Path>) -> Result<ParamSystem, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io(format!("{}: {e}", path.display())))?;
    let mut sys = load_problem(&text)?;
    if sys.name.is_empty() {
        sys.name = path
            .file_stem()
            .map(|s| s.to_string_lossy().trim_end_matches(".prob").to_string())
            .unwrap_or_default();
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use num_traits::One;

    #[test]
    fn trivial_system() {
        let sys = load_problem("params: t\nx1 = t\nx2 = t\n").unwrap();
        assert_eq!((sys.n(), sys.s()), (2, 1));
        assert!(sys.is_polynomial());
        assert!(sys.over_rationals().denominator().constant_coeff().is_one());
    }

    #[test]
    fn dandrea_system() {
        let sys = load_problem(
            "name: dandrea\nparams: t0 t1\n\
             x1 = t0^4\nx2 = 6*t0^2*t1^2 - 4*t1^4\nx3 = 4*t0^3*t1 - 4*t0*t1^3\n",
        )
        .unwrap();
        assert_eq!((sys.n(), sys.s(), sys.name()), (3, 2, "dandrea"));
    }

    #[test]
    fn common_denominator_form() {
        let sys = load_problem("params: s t\nx = s/t\ny = s/t\nz = s\n").unwrap();
        let r = sys.over_rationals();
        let p = |s: &str| parse_polynomial(s, r.params()).unwrap();
        assert_eq!(r.denominator(), &p("t"));
        assert_eq!(r.numerators(), &[p("s"), p("s"), p("s*t")]);
    }

    #[test]
    fn cross_multiplication_identity() {
        let sys = load_problem(
            "params: s t\n\
             x = (2*t^2 - t - 3)/(1 + t^17)\n\
             y = 2*s/(1 + t^2)\n\
             z = (s - t)/((1 + t^2)*(1 + s^2))\n\
             w = 5/2\n",
        )
        .unwrap();
        assert_eq!(sys.constants(), &[("w".to_string(), BigRational::new(5.into(), 2.into()))]);
        let r = sys.over_rationals();
        for ((_, num, den), p) in sys.fractions().iter().zip(r.numerators()) {
            assert_eq!(p.mul(den), num.mul(r.denominator()));
        }
        // the common factor t + 1 was cancelled from the first coordinate
        assert_eq!(sys.fractions()[0].2.degree(), 16);
    }

    #[test]
    fn loader_errors() {
        assert!(matches!(
            load_problem("params: t\nx = 1/(t - t)\n"),
            Err(ParseError::AtLine { line: 2, .. })
        ));
        assert!(matches!(
            load_problem("params: t\nx = 3\n"),
            Err(ParseError::InconsistentArity(_))
        ));
        assert!(matches!(load_problem("char: 12\nparams: t\nx = t\n"), Err(ParseError::AtLine { .. })));
        assert!(load_problem("x = t\n").is_err());
        assert!(load_problem("params: t\nx = t\nx = t^2\n").is_err());
        assert!(load_problem("params: t\nt = t\n").is_err());
    }

    #[test]
    fn prime_images() {
        let sys = load_problem("char: 7\nparams: t\nx = t/3\ny = t^2/(t + 7)\n").unwrap();
        assert_eq!(sys.characteristic(), 7);
        assert!(sys.over_prime(3).is_none());
        assert!(sys.over_prime(7).is_some());
    }
}
