//! Exact surface-theoretic bookkeeping: intersection numbers on Hirzebruch
//! surfaces, the fixed-component bound for anti-bicanonical double covers,
//! Riemann-Roch dimension counts on K3 surfaces, adjunction, pullbacks under
//! finite covers, and the extremal-contraction decision table for K3-fibered
//! 3-folds with `-K = f*O(1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::int;

/// Divisor classes on the Hirzebruch surface F_n, written `(a, b)` for
/// `a*C0 + b*f` with C0 the negative section and f a fiber, so the
/// intersection form is [[-n, 1], [1, 0]].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HirzebruchModel {
    pub n: u64,
}

/// A class on F_n in the (C0, f) basis.
pub type FnClass = (BigInt, BigInt);

impl HirzebruchModel {
    pub fn new(n: u64) -> Self {
        HirzebruchModel { n }
    }

    /// Exact intersection number of `a*C0 + b*f` and `c*C0 + d*f`.
    pub fn intersect(&self, x: &FnClass, y: &FnClass) -> BigInt {
        let n = int(self.n as i64);
        -&n * &x.0 * &y.0 + &x.0 * &y.1 + &x.1 * &y.0
    }

    /// The negative section C0.
    pub fn c0(&self) -> FnClass {
        (int(1), int(0))
    }

    /// A fiber f.
    pub fn fiber(&self) -> FnClass {
        (int(0), int(1))
    }

    /// The positive section C1 = C0 + n*f.
    pub fn c1(&self) -> FnClass {
        (int(1), int(self.n as i64))
    }

    /// The anticanonical class -K = 2*C0 + (n+2)*f.
    pub fn anti_canonical(&self) -> FnClass {
        (int(2), int(self.n as i64 + 2))
    }
}

/// Outcome of the fixed-component analysis of `|-2K|` on F_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponentAnalysis {
    /// `-K . C0 = -(n - 2)`.
    pub minus_k_dot_c0: BigInt,
    /// `(|-2K| - C0) . C0 = -(n - 4)`.
    pub residual_dot_c0: BigInt,
    pub multiplicity_of_c0_in_base_locus: Multiplicity,
    /// True exactly when the base locus does not contain 2*C0, so a smooth
    /// double cover by a K3 surface is possible; equivalent to n <= 4.
    pub smooth_k3_cover_possible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Zero,
    One,
    AtLeastTwo,
}

impl Multiplicity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Multiplicity::Zero => "0",
            Multiplicity::One => "1",
            Multiplicity::AtLeastTwo => ">=2",
        }
    }
}

/// Whether the negative section is forced (once, twice) into the base locus
/// of `|-2K|` on F_n: `-K . C0 = -(n-2)` pins C0, and the residual pairing
/// `-(n-4)` pins it a second time.
pub fn fixed_component_analysis(n: u64) -> FixedComponentAnalysis {
    let n = int(n as i64);
    let minus_k_dot_c0 = -(&n - int(2));
    let residual_dot_c0 = -(&n - int(4));
    let multiplicity = if minus_k_dot_c0.is_negative() && residual_dot_c0.is_negative() {
        Multiplicity::AtLeastTwo
    } else if minus_k_dot_c0.is_negative() {
        Multiplicity::One
    } else {
        Multiplicity::Zero
    };
    FixedComponentAnalysis {
        minus_k_dot_c0,
        residual_dot_c0,
        smooth_k3_cover_possible: multiplicity != Multiplicity::AtLeastTwo,
        multiplicity_of_c0_in_base_locus: multiplicity,
    }
}

/// A line bundle class on a K3 surface, known only through its square and a
/// caller-supplied positivity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Class {
    pub self_intersection: BigInt,
    pub nef_and_big: bool,
}

/// `h^0(L) = 2 + L^2/2` for a nef and big class on a K3 surface
/// (Kawamata-Viehweg vanishing plus Riemann-Roch).
pub fn k3_riemann_roch(class: &K3Class) -> Result<BigInt> {
    if !class.nef_and_big {
        return Err(Error::NotNefAndBig);
    }
    let sq = &class.self_intersection;
    if sq.is_odd() {
        return Err(Error::OddSquare(sq.to_string()));
    }
    if !sq.is_positive() {
        return Err(Error::NotBig(sq.to_string()));
    }
    Ok(int(2) + sq / 2)
}

/// `L^2 = d * M^2` for the pullback of `M` under a finite degree-`d`
/// morphism.
pub fn pullback_self_intersection(m_squared: &BigInt, cover_degree: u64) -> BigInt {
    int(cover_degree as i64) * m_squared
}

/// Genus `g = 1 + C^2/2` of a smooth irreducible curve of class `C` on a K3
/// surface (adjunction with trivial canonical class).
pub fn adjunction_genus_on_k3(c_squared: &BigInt) -> Result<BigInt> {
    if c_squared.is_odd() {
        return Err(Error::OddSquare(c_squared.to_string()));
    }
    if *c_squared < int(-2) {
        return Err(Error::SquareBelowMinusTwo(c_squared.to_string()));
    }
    Ok(int(1) + c_squared / 2)
}

/// One of the eight extremal-contraction types for smooth projective
/// 3-folds, with the context flags of the K3-fibration setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionDescriptor {
    pub mori_type: u8,
    /// `-K_Y` is the pullback of a point class under the K3 fibration.
    pub anti_k_is_fiber_pullback: bool,
    /// The fibration base is the projective line.
    pub fibration_base_is_p1: bool,
}

impl ContractionDescriptor {
    pub fn new(mori_type: i64) -> Result<Self> {
        if !(1..=8).contains(&mori_type) {
            return Err(Error::MoriTypeOutOfRange(mori_type));
        }
        Ok(ContractionDescriptor {
            mori_type: mori_type as u8,
            anti_k_is_fiber_pullback: true,
            fibration_base_is_p1: true,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionVerdict {
    pub allowed: bool,
    pub reason: String,
}

/// Decision table for which contraction types survive when `-K_Y` is a
/// fiber of a K3 fibration over P^1: only the blowup of a smooth curve (1)
/// and the conic bundle (6) remain.
pub fn classify_contraction(d: &ContractionDescriptor) -> Result<ContractionVerdict> {
    let verdict = match d.mori_type {
        1 => ContractionVerdict {
            allowed: true,
            reason: "blowup of a smooth curve in a smooth 3-fold".into(),
        },
        6 => ContractionVerdict {
            allowed: true,
            reason: "conic bundle: a fibration with plane conics as fibers".into(),
        },
        2..=5 => ContractionVerdict {
            allowed: false,
            reason: format!(
                "type {}: the contracted divisor would map to the base curve without \
                 contracting any curves, which is impossible for a map from a surface \
                 to a curve",
                d.mori_type
            ),
        },
        7 => ContractionVerdict {
            allowed: false,
            reason: "type 7: a fiber of the del Pezzo fibration would map to the base \
                     curve without contracting any curves, which is impossible for a \
                     map from a surface to a curve"
                .into(),
        },
        8 => ContractionVerdict {
            allowed: false,
            reason: "type 8: the anticanonical class defines a fibration over the \
                     projective line, so -K is not ample and the 3-fold is not Fano"
                .into(),
        },
        t => return Err(Error::MoriTypeOutOfRange(t as i64)),
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirzebruch_named_classes() {
        for n in 0..6u64 {
            let fn_model = HirzebruchModel::new(n);
            let c0 = fn_model.c0();
            let f = fn_model.fiber();
            let c1 = fn_model.c1();
            assert_eq!(fn_model.intersect(&c0, &c0), int(-(n as i64)));
            assert_eq!(fn_model.intersect(&c0, &f), int(1));
            assert_eq!(fn_model.intersect(&f, &f), int(0));
            // C1 . C1 = n
            assert_eq!(fn_model.intersect(&c1, &c1), int(n as i64));
            // -K = 2C0 + (n+2)f and -K . C0 = -(n - 2)
            let anti_k = fn_model.anti_canonical();
            assert_eq!(anti_k, (int(2), int(n as i64 + 2)));
            assert_eq!(fn_model.intersect(&anti_k, &c0), int(-(n as i64 - 2)));
        }
    }

    #[test]
    fn hirzebruch_bilinear_symmetric() {
        let m = HirzebruchModel::new(3);
        let x = (int(2), int(-1));
        let y = (int(1), int(4));
        let z = (int(-3), int(2));
        assert_eq!(m.intersect(&x, &y), m.intersect(&y, &x));
        let xz = (&x.0 + &z.0, &x.1 + &z.1);
        assert_eq!(
            m.intersect(&xz, &y),
            m.intersect(&x, &y) + m.intersect(&z, &y)
        );
    }

    #[test]
    fn fixed_component_table() {
        let a5 = fixed_component_analysis(5);
        assert_eq!(a5.minus_k_dot_c0, int(-3));
        assert_eq!(a5.residual_dot_c0, int(-1));
        assert_eq!(
            a5.multiplicity_of_c0_in_base_locus,
            Multiplicity::AtLeastTwo
        );
        assert!(!a5.smooth_k3_cover_possible);

        let a2 = fixed_component_analysis(2);
        assert_eq!(a2.minus_k_dot_c0, int(0));
        assert_eq!(a2.residual_dot_c0, int(2));
        assert_eq!(a2.multiplicity_of_c0_in_base_locus, Multiplicity::Zero);
        assert!(a2.smooth_k3_cover_possible);

        let a4 = fixed_component_analysis(4);
        assert_eq!(a4.minus_k_dot_c0, int(-2));
        assert_eq!(a4.residual_dot_c0, int(0));
        assert_eq!(a4.multiplicity_of_c0_in_base_locus, Multiplicity::One);
        assert!(a4.smooth_k3_cover_possible);

        for n in 0..=50u64 {
            assert_eq!(
                fixed_component_analysis(n).smooth_k3_cover_possible,
                n <= 4,
                "n = {n}"
            );
        }
    }

    #[test]
    fn riemann_roch_values() {
        let h0 = |sq: i64| {
            k3_riemann_roch(&K3Class {
                self_intersection: int(sq),
                nef_and_big: true,
            })
        };
        assert_eq!(h0(2).unwrap(), int(3));
        assert_eq!(h0(8).unwrap(), int(6));
        for n in 1..=4i64 {
            assert_eq!(h0(2 * n).unwrap(), int(n + 2));
        }
        assert!(matches!(h0(3), Err(Error::OddSquare(_))));
        assert!(matches!(h0(0), Err(Error::NotBig(_))));
        assert!(matches!(
            k3_riemann_roch(&K3Class {
                self_intersection: int(2),
                nef_and_big: false
            }),
            Err(Error::NotNefAndBig)
        ));
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pullback_self_intersection(&int(1), 2), int(2));
        for n in 0..5i64 {
            assert_eq!(pullback_self_intersection(&int(n), 2), int(2 * n));
        }
        assert_eq!(pullback_self_intersection(&int(7), 1), int(7));
    }

    #[test]
    fn adjunction_examples() {
        assert_eq!(adjunction_genus_on_k3(&int(-2)).unwrap(), int(0));
        assert_eq!(adjunction_genus_on_k3(&int(0)).unwrap(), int(1));
        assert_eq!(adjunction_genus_on_k3(&int(2)).unwrap(), int(2));
        assert!(matches!(
            adjunction_genus_on_k3(&int(-4)),
            Err(Error::SquareBelowMinusTwo(_))
        ));
        assert!(matches!(
            adjunction_genus_on_k3(&int(1)),
            Err(Error::OddSquare(_))
        ));
    }

    #[test]
    fn contraction_table() {
        for t in 1..=8i64 {
            let verdict = classify_contraction(&ContractionDescriptor::new(t).unwrap()).unwrap();
            assert_eq!(verdict.allowed, t == 1 || t == 6, "type {t}");
            assert!(!verdict.reason.is_empty());
        }
        assert!(matches!(
            ContractionDescriptor::new(0),
            Err(Error::MoriTypeOutOfRange(0))
        ));
        assert!(matches!(
            ContractionDescriptor::new(9),
            Err(Error::MoriTypeOutOfRange(9))
        ));
        let c6 = classify_contraction(&ContractionDescriptor::new(6).unwrap()).unwrap();
        assert!(c6.reason.contains("conic"));
        let c8 = classify_contraction(&ContractionDescriptor::new(8).unwrap()).unwrap();
        assert!(c8.reason.contains("not ample"));
        let c3 = classify_contraction(&ContractionDescriptor::new(3).unwrap()).unwrap();
        assert!(c3.reason.contains("does not") || c3.reason.contains("without contracting"));
    }
}
