//! Golden outputs of the worked field-theory derivations, checked through the
//! library API by exact structural equality. Each check panics on mismatch.

use cliffkernel::algebra::{bdecompose, Blade, Multivector, Signature};
use cliffkernel::calculus::{
    celem, cvect, em_field_object, euler_lagrange, grade_sectors, lagrangian_scalar, mvectdiff, svectdiff,
    vvectdiff, DirTerm, Direction, LagrangianKind,
};
use cliffkernel::symexpr::{Atom, Coeff, DerivAtom, Exponent, Expr, Symbol, SymbolTable};

fn g3() -> Signature {
    Signature::new(3, 0, 0).unwrap()
}

fn coords() -> Vec<Symbol> {
    ["t", "x", "y", "z"].iter().map(|s| Symbol::new(s)).collect()
}

fn table() -> SymbolTable {
    let mut t = SymbolTable::new();
    for c in coords() {
        t.declare_coordinate(&c).unwrap();
    }
    t
}

fn s(name: &str) -> Expr {
    Expr::symbol(name)
}

/// Derivative atom of `base` with respect to the letters of `wrt`.
fn d(base: &str, wrt: &str) -> Expr {
    let w = wrt.chars().map(|c| Symbol::new(&c.to_string())).collect();
    Expr::deriv(DerivAtom::new(base.into(), w))
}

fn sum(parts: &[Expr]) -> Expr {
    parts.iter().fold(Expr::zero(), |acc, p| &acc + p)
}

fn blade(idx: &[usize]) -> Blade {
    Blade::from_indices(idx)
}

fn mv(pairs: Vec<(Blade, Expr)>) -> Multivector {
    Multivector::from_terms(g3(), pairs)
}

/// `t ± r` over (t, x, y, z).
fn direction(spatial_sign: i8, with_time: bool) -> Direction {
    let mut terms = Vec::new();
    if with_time {
        terms.push(DirTerm { sign: 1, coord: "t".into(), blade: Blade::SCALAR });
    }
    for (k, c) in ["x", "y", "z"].iter().enumerate() {
        terms.push(DirTerm { sign: spatial_sign, coord: Symbol::new(c), blade: Blade::basis(k + 1) });
    }
    Direction::new(g3(), terms).unwrap()
}

fn radius_sq() -> Expr {
    sum(&[&s("x") * &s("x"), &s("y") * &s("y"), &s("z") * &s("z")])
}

fn position() -> Multivector {
    cvect(g3(), &[Symbol::new("x"), Symbol::new("y"), Symbol::new("z")]).unwrap()
}

pub fn green_function_is_annihilated() {
    let t = table();
    let r = direction(1, false);
    let g = position().scale(&radius_sq().pow(Exponent::new(-3, 2)).unwrap());
    assert!(mvectdiff(&g, &r, &t).unwrap().is_zero());
}

pub fn potential_gradient() {
    let t = table();
    let r = direction(1, false);
    let v = (&s("C") * &radius_sq().pow(Exponent::new(-1, 2)).unwrap()).neg();
    let got = mvectdiff(&Multivector::scalar(g3(), v), &r, &t).unwrap();
    let want = position().scale(&(&s("C") * &radius_sq().pow(Exponent::new(-3, 2)).unwrap()));
    assert_eq!(got, want);

    // printed form with C = 1
    let v1 = radius_sq().pow(Exponent::new(-1, 2)).unwrap().neg();
    let got = mvectdiff(&Multivector::scalar(g3(), v1), &r, &t).unwrap();
    assert_eq!(got, position().scale(&radius_sq().pow(Exponent::new(-3, 2)).unwrap()));
}

pub fn bivector_green_solution() {
    let t = table();
    let r = direction(1, false);
    let i = Multivector::pseudoscalar(g3());
    let v = i.scale(&radius_sq().pow(Exponent::new(-1, 2)).unwrap().neg());
    let got = mvectdiff(&v, &r, &t).unwrap();
    let den = radius_sq().pow(Exponent::new(-3, 2)).unwrap();
    let want = mv(vec![
        (blade(&[2, 3]), &s("x") * &den),
        (blade(&[1, 3]), (&s("y") * &den).neg()),
        (blade(&[1, 2]), &s("z") * &den),
    ]);
    assert_eq!(got, want);
    assert!(mvectdiff(&got, &r, &t).unwrap().is_zero());
}

fn em_fields(t: &mut SymbolTable, deps: &[Symbol]) -> (Multivector, Multivector) {
    for n in ["E_x", "E_y", "E_z", "B_x", "B_y", "B_z"] {
        t.declare_dependency(&Symbol::new(n), deps).unwrap();
    }
    let e = mv(vec![(blade(&[1]), s("E_x")), (blade(&[2]), s("E_y")), (blade(&[3]), s("E_z"))]);
    let b = mv(vec![(blade(&[1]), s("B_x")), (blade(&[2]), s("B_y")), (blade(&[3]), s("B_z"))]);
    (e, b)
}

pub fn field_object_layout() {
    let mut t = table();
    let (e, b) = em_fields(&mut t, &coords());
    let f = em_field_object(&e, &b).unwrap();
    let want = mv(vec![
        (blade(&[2, 3]), s("B_x")),
        (blade(&[1]), s("E_x")),
        (blade(&[1, 3]), s("B_y").neg()),
        (blade(&[2]), s("E_y")),
        (blade(&[1, 2]), s("B_z")),
        (blade(&[3]), s("E_z")),
    ]);
    assert_eq!(f, want);
    assert!(f.grade_part(0).unwrap().is_zero() && f.grade_part(3).unwrap().is_zero());
}

fn printed_sectors() -> [Multivector; 4] {
    let scalar = mv(vec![(Blade::SCALAR, sum(&[d("E_x", "x"), d("E_y", "y"), d("E_z", "z")]))]);
    let vector = mv(vec![
        (blade(&[1]), &d("B_y", "z") - &d("B_z", "y")),
        (blade(&[2]), &d("B_z", "x") - &d("B_x", "z")),
        (blade(&[3]), &d("B_x", "y") - &d("B_y", "x")),
    ]);
    let bivector = mv(vec![
        (blade(&[1, 2]), &d("E_y", "x") - &d("E_x", "y")),
        (blade(&[1, 3]), &d("E_z", "x") - &d("E_x", "z")),
        (blade(&[2, 3]), &d("E_z", "y") - &d("E_y", "z")),
    ]);
    let pseudo = mv(vec![(blade(&[1, 2, 3]), sum(&[d("B_x", "x"), d("B_y", "y"), d("B_z", "z")]))]);
    [scalar, vector, bivector, pseudo]
}

pub fn maxwell_sectors_static_fields() {
    let mut t = table();
    let spatial: Vec<Symbol> = coords()[1..].to_vec();
    let (e, b) = em_fields(&mut t, &spatial);
    let f = em_field_object(&e, &b).unwrap();
    let df = mvectdiff(&f, &direction(1, true), &t).unwrap();
    let sec = grade_sectors(&df).unwrap();
    let [s0, s1, s2, s3] = printed_sectors();
    assert_eq!(sec.scalar, s0);
    assert_eq!(sec.vector, s1);
    assert_eq!(sec.bivector, s2);
    assert_eq!(sec.pseudoscalar, s3);
}

pub fn maxwell_sectors_spatial_derivative() {
    let mut t = table();
    let (e, b) = em_fields(&mut t, &coords());
    let f = em_field_object(&e, &b).unwrap();
    let df = mvectdiff(&f, &direction(1, false), &t).unwrap();
    let sec = grade_sectors(&df).unwrap();
    assert_eq!([sec.scalar, sec.vector, sec.bivector, sec.pseudoscalar], printed_sectors());
}

struct Potential {
    table: SymbolTable,
    a: Multivector,
    da: Multivector,
}

fn paravector_potential() -> Potential {
    let mut table = table();
    let a = celem(g3(), &mut table, "A", &coords()).unwrap();
    let da = mvectdiff(&a, &direction(-1, true), &table).unwrap();
    Potential { table, a, da }
}

/// `-X_tt + X_xx + X_yy + X_zz`
fn box_neg(name: &str) -> Expr {
    sum(&[d(name, "tt").neg(), d(name, "xx"), d(name, "yy"), d(name, "zz")])
}

pub fn paravector_field_shape() {
    let p = paravector_potential();
    let want = mv(vec![
        (Blade::SCALAR, s("A_t")),
        (blade(&[1]), s("A_x")),
        (blade(&[2]), s("A_y")),
        (blade(&[3]), s("A_z")),
    ]);
    assert_eq!(p.a, want);
    assert_eq!(p.da.grades(), vec![0, 1, 2]);
}

pub fn dalembert_from_quadratic_lagrangian() {
    let p = paravector_potential();
    let l = lagrangian_scalar(&p.da, LagrangianKind::Quadratic).unwrap();

    let f0 = p.da.grade_part(0).unwrap();
    let f1 = p.da.grade_part(1).unwrap();
    let f2 = p.da.grade_part(2).unwrap();
    let sq = |m: &Multivector| m.gp(m).unwrap().scalar_part();
    let identity = sum(&[sq(&f0), sq(&f1), sq(&f2)]).scale(&Coeff::new(1.into(), 2.into()));
    assert!((&l - &identity).is_zero());

    let el = euler_lagrange(&l, &direction(1, true), &p.a, &p.da, &p.table).unwrap();
    let want = mv(vec![
        (Blade::SCALAR, box_neg("A_t")),
        (blade(&[1]), box_neg("A_x")),
        (blade(&[2]), box_neg("A_y")),
        (blade(&[3]), box_neg("A_z")),
    ]);
    assert_eq!(el, want);

    let groups = bdecompose(&el);
    assert_eq!(groups.len(), 4);
    assert_eq!(groups[0].coeffs, vec![box_neg("A_t")]);
    assert_eq!(groups[1].coeffs, vec![box_neg("A_x"), box_neg("A_y"), box_neg("A_z")]);
    assert!(groups[2].is_zero() && groups[3].is_zero());
}

struct Electromagnetism {
    table: SymbolTable,
    a: Multivector,
    da: Multivector,
    l: Expr,
    e: Multivector,
    b: Multivector,
    j: Multivector,
    q: Multivector,
}

fn electromagnetism() -> Electromagnetism {
    let mut table = table();
    table.declare_dependency(&"f".into(), &coords()).unwrap();
    let t_plus_r = direction(1, true);
    let t_minus_r = direction(-1, true);
    let r = direction(1, false);
    let f = Multivector::scalar(g3(), s("f"));
    let a = celem(g3(), &mut table, "A", &coords()).unwrap().add(&mvectdiff(&f, &t_plus_r, &table).unwrap()).unwrap();
    let da = mvectdiff(&a, &t_minus_r, &table).unwrap();
    let field = da.non_scalar_part();
    let l = lagrangian_scalar(&field, LagrangianKind::Em).unwrap();
    let i = Multivector::pseudoscalar(g3());
    let bvec = a.grade_part(1).unwrap();
    let b = i.gp(&vvectdiff(&bvec, &r, &table).unwrap()).unwrap().neg();
    let dt = |m: &Multivector| m.map_coeffs(|c| c.diff(&"t".into(), &table));
    let e = dt(&bvec).sub(&mvectdiff(&Multivector::scalar(g3(), a.scalar_part()), &r, &table).unwrap()).unwrap();
    let j = dt(&e).sub(&vvectdiff(&i.gp(&b).unwrap(), &r, &table).unwrap()).unwrap();
    let q = svectdiff(&e, &r, &table).unwrap();
    Electromagnetism { table, a, da, l, e, b, j, q }
}

pub fn em_lagrangian_printed() {
    let em = electromagnetism();
    let sq = |x: Expr| &x * &x;
    let two = |x: Expr, y: Expr| (&x * &y).scale(&Coeff::from_integer(2.into()));
    let want = sum(&[
        sq(d("A_t", "x")),
        sq(d("A_t", "y")),
        sq(d("A_t", "z")),
        two(d("A_t", "x"), d("A_x", "t")).neg(),
        sq(d("A_x", "t")),
        sq(d("A_x", "y")).neg(),
        sq(d("A_x", "z")).neg(),
        two(d("A_t", "y"), d("A_y", "t")).neg(),
        sq(d("A_y", "t")),
        two(d("A_x", "y"), d("A_y", "x")),
        sq(d("A_y", "x")).neg(),
        sq(d("A_y", "z")).neg(),
        two(d("A_t", "z"), d("A_z", "t")).neg(),
        sq(d("A_z", "t")),
        two(d("A_x", "z"), d("A_z", "x")),
        sq(d("A_z", "x")).neg(),
        two(d("A_y", "z"), d("A_z", "y")),
        sq(d("A_z", "y")).neg(),
    ])
    .scale(&Coeff::new(1.into(), 2.into()));
    assert_eq!(em.l, want);
}

pub fn em_fields_printed() {
    let em = electromagnetism();
    let b_want = mv(vec![
        (blade(&[3]), &d("A_y", "x") - &d("A_x", "y")),
        (blade(&[2]), &d("A_x", "z") - &d("A_z", "x")),
        (blade(&[1]), &d("A_z", "y") - &d("A_y", "z")),
    ]);
    assert_eq!(em.b, b_want);
    let e_want = mv(vec![
        (blade(&[1]), &d("A_x", "t") - &d("A_t", "x")),
        (blade(&[2]), &d("A_y", "t") - &d("A_t", "y")),
        (blade(&[3]), &d("A_z", "t") - &d("A_t", "z")),
    ]);
    assert_eq!(em.e, e_want);
    let j_want = mv(vec![
        (
            blade(&[1]),
            sum(&[d("A_t", "tx").neg(), d("A_x", "tt"), d("A_x", "yy").neg(), d("A_x", "zz").neg(), d("A_y", "xy"), d("A_z", "xz")]),
        ),
        (
            blade(&[2]),
            sum(&[d("A_t", "ty").neg(), d("A_x", "xy"), d("A_y", "tt"), d("A_y", "xx").neg(), d("A_y", "zz").neg(), d("A_z", "yz")]),
        ),
        (
            blade(&[3]),
            sum(&[d("A_t", "tz").neg(), d("A_x", "xz"), d("A_y", "yz"), d("A_z", "tt"), d("A_z", "xx").neg(), d("A_z", "yy").neg()]),
        ),
    ]);
    assert_eq!(em.j, j_want);
    let q_want = sum(&[
        d("A_t", "xx").neg(),
        d("A_t", "yy").neg(),
        d("A_t", "zz").neg(),
        d("A_x", "tx"),
        d("A_y", "ty"),
        d("A_z", "tz"),
    ]);
    assert_eq!(em.q, Multivector::scalar(g3(), q_want));
}

pub fn maxwell_identities_vanish() {
    let em = electromagnetism();
    let t = &em.table;
    let r = direction(1, false);
    let i = Multivector::pseudoscalar(g3());

    let qj = em.q.add(&em.j).unwrap();
    assert!(svectdiff(&qj, &direction(-1, true), t).unwrap().is_zero(), "charge conservation");

    let faraday = i
        .gp(&mvectdiff(&em.e, &r, t).unwrap().non_scalar_part())
        .unwrap()
        .neg()
        .sub(&em.b.map_coeffs(|c| c.diff(&"t".into(), t)))
        .unwrap();
    assert!(faraday.is_zero(), "Faraday");

    assert!(svectdiff(&em.b, &r, t).unwrap().is_zero(), "Gauss for magnetism");

    let e2 = em.e.gp(&em.e).unwrap().scalar_part();
    let b2 = em.b.gp(&em.b).unwrap().scalar_part();
    let half = Coeff::new(1.into(), 2.into());
    assert!((&(&e2 - &b2).scale(&half) - &em.l).is_zero(), "Lagrangian identity");
}

pub fn euler_lagrange_gives_maxwell() {
    let em = electromagnetism();
    let el = euler_lagrange(&em.l, &direction(1, true), &em.a, &em.da, &em.table).unwrap();
    let sum_q_j = em.q.add(&em.j).unwrap();
    assert!(el.add(&sum_q_j).unwrap().is_zero());
    assert!(em.a.terms().any(|(_, c)| mentions(c, "f")), "the potential carries the gauge term");
    for m in [&el, &em.e, &em.b, &em.j, &em.q] {
        assert!(m.terms().all(|(_, c)| !mentions(c, "f")), "gauge field leaked into {m}");
    }

    let mut table = em.table.clone();
    let j0 = celem(g3(), &mut table, "J", &coords()).unwrap();
    let a0 = {
        let mut scratch = table.clone();
        celem(g3(), &mut scratch, "A", &coords()).unwrap()
    };
    let lj = &em.l + &a0.gp(&j0).unwrap().scalar_part();
    let el = euler_lagrange(&lj, &direction(1, true), &em.a, &em.da, &table).unwrap();
    assert!(el.add(&sum_q_j).unwrap().sub(&j0).unwrap().is_zero());
}

/// Whether `e` contains `name` as a symbol, a derivative base or inside a power.
pub fn mentions(e: &Expr, name: &str) -> bool {
    e.atoms().iter().any(|a| match a {
        Atom::Symbol(s) => s.name() == name,
        Atom::Deriv(d) => d.base().name() == name,
        Atom::Power(inner) => mentions(inner, name),
    })
}
