//! Reference expressions for the N = 4 ground-state components, the N = 6
//! base component, and the component sums, transcribed once in their
//! factored/semi-factored form and frozen as expanded canonical JSON under
//! `fixtures/`. The `check` entry point re-expands the transcriptions and
//! compares them against both the frozen files and freshly built vectors.

use num::bigint::BigInt;

use crate::brauer::{build_vector, lin_a, lin_b, lin_c, GroundStateVector, Model};
use crate::jsonio::{poly_from_dto, poly_to_dto, PolyDto, SchemaError};
use crate::pattern::LinkPattern;
use crate::poly::{Monomial, QPoly, WPoly};
use crate::report::{CheckReport, Checker};
use crate::ring::{Cyclotomic, Rational, Scalar};
use crate::tl::build_vector_tl;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qterms(n_vars: usize, terms: &[(i64, [u32; 4])]) -> QPoly {
    QPoly::from_terms(
        n_vars,
        terms
            .iter()
            .map(|(c, e)| (Monomial(e.to_vec()), q(*c)))
            .collect(),
    )
}

/// P_0^{(4)} = 5 + 3z2 - 3z3 - 2z2z3 - z1^2 - z4^2 + (z1^2 - z4^2)(z2 + z3).
pub fn p0_four() -> QPoly {
    let explicit = qterms(
        4,
        &[
            (5, [0, 0, 0, 0]),
            (3, [0, 1, 0, 0]),
            (-3, [0, 0, 1, 0]),
            (-2, [0, 1, 1, 0]),
            (-1, [2, 0, 0, 0]),
            (-1, [0, 0, 0, 2]),
        ],
    );
    let z1sq = qterms(4, &[(1, [2, 0, 0, 0])]);
    let z4sq = qterms(4, &[(1, [0, 0, 0, 2])]);
    let z2z3 = qterms(4, &[(1, [0, 1, 0, 0]), (1, [0, 0, 1, 0])]);
    explicit.add(&z1sq.sub(&z4sq).mul(&z2z3))
}

/// The three N = 4 components in display order: the maximally crossing
/// pattern (1,3)(2,4), then (1,4)(2,3), then (1,2)(3,4). The first prefactor
/// is a_{1,2} b_{1,2} a_{2,3} a_{3,4} c_{3,4}; the printed source shows
/// b_{3,4} there, which fails both boundary evenness in z_4 and the required
/// vanishing on z_4 = 1 + z_3.
pub fn appendix_a_components() -> [QPoly; 3] {
    let n = 4;
    let comp1 = lin_a(n, 1, 2)
        .mul(&lin_b(n, 1, 2))
        .mul(&lin_a(n, 2, 3))
        .mul(&lin_a(n, 3, 4))
        .mul(&lin_c(n, 3, 4))
        .mul(&p0_four());

    let bracket2 = qterms(
        n,
        &[
            (11, [0, 0, 0, 0]),
            (-3, [2, 0, 0, 0]),
            (8, [0, 1, 0, 0]),
            (1, [0, 2, 0, 0]),
            (-8, [0, 0, 1, 0]),
            (2, [2, 0, 1, 0]),
            (-8, [0, 1, 1, 0]),
            (-2, [0, 2, 1, 0]),
            (1, [0, 0, 2, 0]),
            (2, [0, 1, 2, 0]),
            (-3, [0, 0, 0, 2]),
            (-2, [0, 1, 0, 2]),
        ],
    )
    .sub(
        &qterms(n, &[(1, [2, 0, 0, 0]), (-1, [0, 0, 2, 0])])
            .mul(&qterms(n, &[(1, [0, 2, 0, 0]), (-1, [0, 0, 0, 2])])),
    );
    let comp2 = lin_a(n, 1, 2)
        .mul(&lin_b(n, 1, 2))
        .mul(&lin_a(n, 3, 4))
        .mul(&lin_c(n, 3, 4))
        .mul(&bracket2);

    let bracket3 = qterms(
        n,
        &[
            (23, [0, 0, 0, 0]),
            (-10, [2, 0, 0, 0]),
            (3, [4, 0, 0, 0]),
            (-7, [0, 1, 0, 0]),
            (18, [2, 1, 0, 0]),
            (-3, [4, 1, 0, 0]),
            (-11, [0, 2, 0, 0]),
            (4, [2, 2, 0, 0]),
            (-1, [4, 2, 0, 0]),
            (3, [0, 3, 0, 0]),
            (-4, [2, 3, 0, 0]),
            (7, [0, 0, 1, 0]),
            (10, [2, 0, 1, 0]),
            (-1, [4, 0, 1, 0]),
            (2, [0, 1, 1, 0]),
            (16, [2, 1, 1, 0]),
            (-2, [4, 1, 1, 0]),
            (-1, [0, 2, 1, 0]),
            (-4, [2, 2, 1, 0]),
            (-4, [0, 3, 1, 0]),
            (-11, [0, 0, 2, 0]),
            (9, [2, 0, 2, 0]),
            (-2, [4, 0, 2, 0]),
            (1, [0, 1, 2, 0]),
            (1, [2, 1, 2, 0]),
            (3, [0, 2, 2, 0]),
            (1, [2, 2, 2, 0]),
            (-1, [0, 3, 2, 0]),
            (-3, [0, 0, 3, 0]),
            (-1, [2, 0, 3, 0]),
            (-4, [0, 1, 3, 0]),
            (-2, [2, 1, 3, 0]),
            (1, [0, 2, 3, 0]),
            (2, [0, 3, 3, 0]),
            (-10, [0, 0, 0, 2]),
            (-11, [2, 0, 0, 2]),
            (1, [4, 0, 0, 2]),
            (-10, [0, 1, 0, 2]),
            (1, [2, 1, 0, 2]),
            (9, [0, 2, 0, 2]),
            (1, [2, 2, 0, 2]),
            (1, [0, 3, 0, 2]),
            (-18, [0, 0, 1, 2]),
            (-1, [2, 0, 1, 2]),
            (16, [0, 1, 1, 2]),
            (6, [2, 1, 1, 2]),
            (-1, [0, 2, 1, 2]),
            (-2, [0, 3, 1, 2]),
            (4, [0, 0, 2, 2]),
            (1, [2, 0, 2, 2]),
            (4, [0, 1, 2, 2]),
            (1, [0, 2, 2, 2]),
            (4, [0, 0, 3, 2]),
            (3, [0, 0, 0, 4]),
            (1, [2, 0, 0, 4]),
            (1, [0, 1, 0, 4]),
            (-2, [0, 2, 0, 4]),
            (3, [0, 0, 1, 4]),
            (-2, [0, 1, 1, 4]),
            (-1, [0, 0, 2, 4]),
        ],
    )
    .add(
        &qterms(n, &[(1, [0, 1, 0, 0]), (1, [0, 0, 1, 0])])
            .mul(&qterms(n, &[(1, [2, 0, 0, 0]), (-1, [0, 0, 2, 0])]))
            .mul(&qterms(n, &[(1, [2, 0, 0, 0]), (-1, [0, 0, 0, 2])]))
            .mul(&qterms(n, &[(1, [0, 2, 0, 0]), (-1, [0, 0, 0, 2])])),
    );
    let comp3 = lin_a(n, 2, 3).mul(&bracket3);

    [comp1, comp2, comp3]
}

/// The N = 6 base component in its semi-factored form.
pub fn psi0_six() -> QPoly {
    let n = 6;
    let a = |i, j| lin_a(n, i, j);
    let b = |i, j| lin_b(n, i, j);
    let c = |i, j| lin_c(n, i, j);
    let one = QPoly::one(n);
    let two = |f: &QPoly| f.scalar_mul(&q(2));
    let four = |f: &QPoly| f.scalar_mul(&q(4));

    let prefactor = a(1, 2)
        .mul(&b(1, 2))
        .mul(&a(1, 3))
        .mul(&b(1, 3))
        .mul(&a(2, 3))
        .mul(&b(2, 3))
        .mul(&a(2, 4))
        .mul(&a(3, 4))
        .mul(&a(3, 5))
        .mul(&a(4, 5))
        .mul(&c(4, 5))
        .mul(&a(4, 6))
        .mul(&c(4, 6))
        .mul(&a(5, 6))
        .mul(&c(5, 6));

    let t1 = a(1, 6)
        .mul(&b(1, 6))
        .mul(&a(2, 6))
        .mul(&b(2, 6))
        .mul(&b(3, 4))
        .mul(&b(3, 5))
        .mul(
            &a(1, 5)
                .mul(&b(1, 5))
                .mul(&b(2, 4))
                .add(&two(&c(2, 5).mul(&one.add(&b(5, 4))))),
        );
    let t2 = four(
        &a(1, 6).mul(&a(2, 6)).mul(&b(3, 4)).mul(&c(3, 6)).mul(
            &a(1, 5)
                .mul(&b(2, 4))
                .mul(&c(2, 6))
                .add(&two(&b(1, 6).mul(&one.add(&b(5, 4))))),
        ),
    );
    let t3 = four(
        &c(3, 5)
            .mul(&c(3, 6))
            .mul(&one.add(&b(4, 6)))
            .mul(&one.add(&b(5, 6)))
            .mul(
                &a(1, 5)
                    .mul(&b(1, 6))
                    .mul(&b(2, 4))
                    .add(&two(&c(2, 6).mul(&one.add(&b(5, 4))))),
            ),
    );
    let t4 = two(
        &c(3, 5).mul(&c(3, 6)).mul(&one.add(&b(4, 6))).mul(
            &a(1, 5)
                .mul(&a(2, 6))
                .mul(&b(1, 5))
                .mul(&b(2, 4))
                .mul(&c(2, 6))
                .add(&two(
                    &a(1, 5)
                        .mul(&b(1, 5))
                        .mul(&b(1, 6))
                        .mul(&a(1, 6).sub(&b(2, 4))),
                ))
                .add(&two(
                    &a(1, 6)
                        .mul(&b(1, 4))
                        .mul(&b(1, 6))
                        .mul(&b(2, 5).sub(&a(1, 5))),
                )),
        ),
    );
    let t5 = two(
        &c(3, 6).mul(&b(3, 4)).mul(&one.add(&b(5, 6))).mul(
            &a(1, 5)
                .mul(&a(1, 6))
                .mul(&b(1, 5))
                .mul(&b(1, 6))
                .mul(&b(2, 4))
                .add(&two(
                    &b(1, 4)
                        .mul(&a(2, 6))
                        .mul(&c(2, 6))
                        .mul(&b(2, 5).sub(&a(1, 5))),
                ))
                .add(&two(
                    &a(1, 5)
                        .mul(&b(1, 5))
                        .mul(&c(2, 6))
                        .mul(&one.add(&b(4, 6))),
                )),
        ),
    );

    prefactor.mul(&t1.add(&t2).add(&t3).add(&t4).add(&t5))
}

/// Z^{(4)} in the crossing model: the explicit 49-term expansion.
pub fn z4_sum_brauer() -> QPoly {
    qterms(
        4,
        &[
            (39, [0, 0, 0, 0]),
            (-30, [2, 0, 0, 0]),
            (7, [4, 0, 0, 0]),
            (-30, [0, 2, 0, 0]),
            (14, [2, 2, 0, 0]),
            (-4, [4, 2, 0, 0]),
            (7, [0, 4, 0, 0]),
            (-4, [2, 4, 0, 0]),
            (1, [4, 4, 0, 0]),
            (-30, [0, 0, 2, 0]),
            (14, [2, 0, 2, 0]),
            (-4, [4, 0, 2, 0]),
            (14, [0, 2, 2, 0]),
            (12, [2, 2, 2, 0]),
            (-1, [4, 2, 2, 0]),
            (-4, [0, 4, 2, 0]),
            (-1, [2, 4, 2, 0]),
            (7, [0, 0, 4, 0]),
            (-4, [2, 0, 4, 0]),
            (1, [4, 0, 4, 0]),
            (-4, [0, 2, 4, 0]),
            (-1, [2, 2, 4, 0]),
            (1, [0, 4, 4, 0]),
            (-30, [0, 0, 0, 2]),
            (14, [2, 0, 0, 2]),
            (-4, [4, 0, 0, 2]),
            (14, [0, 2, 0, 2]),
            (12, [2, 2, 0, 2]),
            (-1, [4, 2, 0, 2]),
            (-4, [0, 4, 0, 2]),
            (-1, [2, 4, 0, 2]),
            (14, [0, 0, 2, 2]),
            (12, [2, 0, 2, 2]),
            (-1, [4, 0, 2, 2]),
            (12, [0, 2, 2, 2]),
            (6, [2, 2, 2, 2]),
            (-1, [0, 4, 2, 2]),
            (-4, [0, 0, 4, 2]),
            (-1, [2, 0, 4, 2]),
            (-1, [0, 2, 4, 2]),
            (7, [0, 0, 0, 4]),
            (-4, [2, 0, 0, 4]),
            (1, [4, 0, 0, 4]),
            (-4, [0, 2, 0, 4]),
            (-1, [2, 2, 0, 4]),
            (1, [0, 4, 0, 4]),
            (-4, [0, 0, 2, 4]),
            (-1, [2, 0, 2, 4]),
            (-1, [0, 2, 2, 4]),
            (1, [0, 0, 4, 4]),
        ],
    )
}

fn wone() -> Cyclotomic {
    Cyclotomic::one()
}

fn wq(n: i64) -> Cyclotomic {
    Cyclotomic::from_rational(q(n))
}

fn wvar(n: usize, i: usize) -> WPoly {
    WPoly::var(n, i)
}

/// q z_i - z_j over Q(w).
fn q_zi_minus_zj(n: usize, i: usize, j: usize) -> WPoly {
    wvar(n, i)
        .scalar_mul(&Cyclotomic::omega())
        .sub(&wvar(n, j))
}

/// q^2 z_i z_j - 1.
fn q2_zizj_minus_1(n: usize, i: usize, j: usize) -> WPoly {
    wvar(n, i)
        .mul(&wvar(n, j))
        .scalar_mul(&Cyclotomic::omega_sq())
        .sub(&WPoly::one(n))
}

/// q^2 z_j - z_i.
fn q2_zj_minus_zi(n: usize, i: usize, j: usize) -> WPoly {
    wvar(n, j)
        .scalar_mul(&Cyclotomic::omega_sq())
        .sub(&wvar(n, i))
}

/// q z_i z_j - 1.
fn q_zizj_minus_1(n: usize, i: usize, j: usize) -> WPoly {
    wvar(n, i)
        .mul(&wvar(n, j))
        .scalar_mul(&Cyclotomic::omega())
        .sub(&WPoly::one(n))
}

/// The two N = 4 non-crossing components: the nested pattern (1,4)(2,3),
/// then the fundamental (1,2)(3,4). The nested component's third factor is
/// q^2 z_4 - z_3 (the printed q^2 z_3 - z_4 breaks z_4-reciprocity and the
/// component sum).
pub fn appendix_b_components() -> [WPoly; 2] {
    let n = 4;
    let comp1 = q_zi_minus_zj(n, 1, 2)
        .mul(&q2_zizj_minus_1(n, 1, 2))
        .mul(&q2_zj_minus_zi(n, 3, 4))
        .mul(&q_zizj_minus_1(n, 3, 4));

    let w2 = Cyclotomic::omega_sq();
    let z = |i| wvar(n, i);
    let p = |i, j| wvar(n, i).mul(&wvar(n, j));
    let z1z2z3z4 = p(1, 2).mul(&p(3, 4));
    let inner = z(1)
        .scalar_mul(&w2)
        .sub(&z(4))
        .mul(&WPoly::one(n).add(&z1z2z3z4))
        .add(
            &z(4)
                .scalar_mul(&w2)
                .sub(&z(1))
                .mul(&p(1, 4).add(&p(2, 3))),
        )
        .add(
            &p(1, 4)
                .mul(&z(2).add(&z(3)))
                .scalar_mul(&w2.sub(&wone())),
        );
    let comp2 = q_zi_minus_zj(n, 2, 3).mul(&inner);

    [comp1, comp2]
}

/// Z^{(4)} in the non-crossing model.
pub fn z4_sum_tl() -> WPoly {
    let n = 4;
    let z = |i| wvar(n, i);
    let p = |i, j| wvar(n, i).mul(&wvar(n, j));
    let z1z2z3z4 = p(1, 2).mul(&p(3, 4));
    let e2 = p(1, 2)
        .add(&p(1, 3))
        .add(&p(2, 3))
        .add(&p(1, 4))
        .add(&p(2, 4))
        .add(&p(3, 4));
    WPoly::one(n)
        .add(&z1z2z3z4)
        .mul(&e2)
        .add(
            &z(1)
                .add(&z(2))
                .mul(&z(3).add(&z(4)))
                .mul(&p(1, 2).add(&p(3, 4))),
        )
        .add(&p(1, 3).add(&p(2, 4)).mul(&p(1, 4).add(&p(2, 3))))
        .add(&z1z2z3z4.scalar_mul(&wq(3)))
}

const APPENDIX_A_JSON: &str = include_str!("../fixtures/appendix-a.json");
const APPENDIX_B_JSON: &str = include_str!("../fixtures/appendix-b.json");

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct FixtureFile {
    pub note: String,
    pub components4: Vec<PolyDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi0_6: Option<PolyDto>,
    pub z4_sum: PolyDto,
}

pub fn render_appendix_a_file() -> FixtureFile {
    FixtureFile {
        note: "expanded canonical forms of the factored reference expressions in fixtures.rs \
               (crossing model, N=4 components, N=6 base component, N=4 component sum)"
            .into(),
        components4: appendix_a_components().iter().map(poly_to_dto).collect(),
        psi0_6: Some(poly_to_dto(&psi0_six())),
        z4_sum: poly_to_dto(&z4_sum_brauer()),
    }
}

pub fn render_appendix_b_file() -> FixtureFile {
    FixtureFile {
        note: "expanded canonical forms of the factored reference expressions in fixtures.rs \
               (non-crossing model, N=4 components and component sum)"
            .into(),
        components4: appendix_b_components().iter().map(poly_to_dto).collect(),
        psi0_6: None,
        z4_sum: poly_to_dto(&z4_sum_tl()),
    }
}

fn parse_fixture(json: &str) -> Result<FixtureFile, SchemaError> {
    Ok(serde_json::from_str(json)?)
}

/// Compares the frozen appendix-a file against the in-code transcription and
/// a freshly built vector.
pub fn check_appendix_a() -> Result<CheckReport, SchemaError> {
    let mut chk = Checker::new();
    let frozen = parse_fixture(APPENDIX_A_JSON)?;
    let transcribed = appendix_a_components();

    let mut fails = Vec::new();
    if frozen.components4.len() != 3 {
        fails.push("frozen file must hold 3 components".to_string());
    } else {
        for (k, dto) in frozen.components4.iter().enumerate() {
            let pf: QPoly = poly_from_dto(dto, &format!("$.components4[{k}]"))?;
            if pf != transcribed[k] {
                fails.push(format!("component {k} differs from transcription"));
            }
        }
    }
    let frozen_psi06: QPoly = poly_from_dto(
        frozen.psi0_6.as_ref().ok_or_else(|| SchemaError::Invalid {
            location: "$.psi0_6".into(),
            message: "missing".into(),
        })?,
        "$.psi0_6",
    )?;
    if frozen_psi06 != psi0_six() {
        fails.push("psi0_6 differs from transcription".to_string());
    }
    let frozen_sum: QPoly = poly_from_dto(&frozen.z4_sum, "$.z4_sum")?;
    if frozen_sum != z4_sum_brauer() {
        fails.push("z4_sum differs from transcription".to_string());
    }
    chk.record("appendix-a-frozen-vs-transcription", 5, fails);

    let built: GroundStateVector<Rational> = build_vector(4).expect("build");
    let mut fails = Vec::new();
    let base = LinkPattern::crossing_base(4);
    let order = [base.clone(), base.apply_f(1), base.apply_f(2)];
    for (k, pi) in order.iter().enumerate() {
        if built.component(pi) != &transcribed[k] {
            fails.push(format!("built component {k} ({pi}) differs"));
        }
    }
    let sum = built
        .components
        .iter()
        .fold(QPoly::zero(4), |acc, f| acc.add(f));
    if sum != z4_sum_brauer() {
        fails.push("built component sum differs".to_string());
    }
    let built6 = crate::brauer::psi0(6).expect("psi0(6)");
    if built6 != psi0_six() {
        fails.push("built psi0_6 differs".to_string());
    }
    chk.record("appendix-a-built-vs-transcription", 5, fails);
    Ok(chk.finish())
}

pub fn check_appendix_b() -> Result<CheckReport, SchemaError> {
    let mut chk = Checker::new();
    let frozen = parse_fixture(APPENDIX_B_JSON)?;
    let transcribed = appendix_b_components();

    let mut fails = Vec::new();
    if frozen.components4.len() != 2 {
        fails.push("frozen file must hold 2 components".to_string());
    } else {
        for (k, dto) in frozen.components4.iter().enumerate() {
            let pf: WPoly = poly_from_dto(dto, &format!("$.components4[{k}]"))?;
            if pf != transcribed[k] {
                fails.push(format!("component {k} differs from transcription"));
            }
        }
    }
    let frozen_sum: WPoly = poly_from_dto(&frozen.z4_sum, "$.z4_sum")?;
    if frozen_sum != z4_sum_tl() {
        fails.push("z4_sum differs from transcription".to_string());
    }
    chk.record("appendix-b-frozen-vs-transcription", 3, fails);

    let built: GroundStateVector<Cyclotomic> = build_vector_tl(4).expect("build");
    let mut fails = Vec::new();
    let nested = LinkPattern::nested_base(4);
    let fundamental = LinkPattern::fundamental(4);
    if built.component(&nested) != &transcribed[0] {
        fails.push("built nested component differs".to_string());
    }
    if built.component(&fundamental) != &transcribed[1] {
        fails.push("built fundamental component differs".to_string());
    }
    let sum = built
        .components
        .iter()
        .fold(WPoly::zero(4), |acc, f| acc.add(f));
    if sum != z4_sum_tl() {
        fails.push("built component sum differs".to_string());
    }
    chk.record("appendix-b-built-vs-transcription", 3, fails);
    assert_eq!(built.model, Model::Tl);
    Ok(chk.finish())
}

/// Rewrites the frozen fixture files from the transcriptions (dev tool).
pub fn write_frozen_files() -> std::io::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    let a = serde_json::to_string_pretty(&render_appendix_a_file()).expect("serialize");
    std::fs::write(dir.join("appendix-a.json"), a + "\n")?;
    let b = serde_json::to_string_pretty(&render_appendix_b_file()).expect("serialize");
    std::fs::write(dir.join("appendix-b.json"), b + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Scalar;

    #[test]
    fn transcription_sums() {
        let comps = appendix_a_components();
        let sum = comps.iter().fold(QPoly::zero(4), |acc, f| acc.add(f));
        assert_eq!(sum, z4_sum_brauer());
        let at0 = sum.eval(&[q(0), q(0), q(0), q(0)]);
        assert_eq!(at0, q(39));

        let tl = appendix_b_components();
        let tlsum = tl.iter().fold(WPoly::zero(4), |acc, f| acc.add(f));
        assert_eq!(tlsum, z4_sum_tl());
        let ones = vec![Cyclotomic::one(); 4];
        assert_eq!(tlsum.eval(&ones), Cyclotomic::from_rational(q(27)));
    }

    #[test]
    fn psi0_six_homogeneous_value() {
        let f = psi0_six();
        assert_eq!(f.eval(&vec![q(0); 6]), q(129));
        let (tot, parts) = f.degrees().unwrap();
        assert_eq!(tot, 24);
        assert!(parts.iter().all(|&p| p == 8));
    }

    #[test]
    fn frozen_files_match() {
        let a = check_appendix_a().unwrap();
        assert!(a.all_passed(), "{}", a.render_text());
        let b = check_appendix_b().unwrap();
        assert!(b.all_passed(), "{}", b.render_text());
    }
}
