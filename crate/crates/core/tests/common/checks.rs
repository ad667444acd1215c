//! Algebra property checks shared by the property suite and the acceptance
//! runner. Each returns a short summary on success.

use cliffkernel::algebra::{blade_product, AlgebraError, Blade, Multivector, Signature};
use cliffkernel::symexpr::{Coeff, Expr};
use num_traits::{One, Zero};
use rand::Rng;

use std::collections::BTreeMap;

use super::*;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vars() -> Vec<cliffkernel::symexpr::Symbol> {
    syms(&["u", "v"])
}

/// `(AB)C = A(BC)` on `triples` random triples cycling through every
/// signature with n <= 4, degenerate ones included. Every third triple has
/// symbolic coefficients.
pub fn associativity(seed: u64, triples: usize) -> Check {
    let sigs = signatures_up_to(4);
    let mut r = rng(seed);
    for i in 0..triples {
        let s = sigs[i % sigs.len()];
        let gen = |r: &mut ChaCha8Rng| {
            if i % 3 == 0 {
                random_symbolic_mv(r, s, &vars())
            } else {
                random_numeric_mv(r, s)
            }
        };
        let (a, b, c) = (gen(&mut r), gen(&mut r), gen(&mut r));
        let left = a.gp(&b).unwrap().gp(&c).unwrap();
        let right = a.gp(&b.gp(&c).unwrap()).unwrap();
        ensure(left == right, || format!("associativity fails in {s}: a={a}, b={b}, c={c}"))?;
    }
    Ok(format!("{triples} triples over {} signatures", sigs.len()))
}

/// `A|B + A&B = AB` for random multivectors, and for vectors the inner
/// product equals the quadratic form and the outer product has components
/// `a_i b_j - a_j b_i`.
pub fn inner_plus_outer(seed: u64, cases: usize) -> Check {
    let sigs = signatures_up_to(4);
    let mut r = rng(seed);
    for i in 0..cases {
        let s = sigs[i % sigs.len()];
        let (a, b) = (random_symbolic_mv(&mut r, s, &vars()), random_numeric_mv(&mut r, s));
        let sum = a.inner(&b).unwrap().add(&a.outer(&b).unwrap()).unwrap();
        ensure(sum == a.gp(&b).unwrap(), || format!("A|B + A&B != AB in {s}"))?;

        let n = s.dim();
        let xa: Vec<Coeff> = (0..n).map(|_| small_rational(&mut r)).collect();
        let xb: Vec<Coeff> = (0..n).map(|_| small_rational(&mut r)).collect();
        let vec_of = |x: &[Coeff]| {
            Multivector::from_terms(s, x.iter().enumerate().map(|(k, c)| (Blade::basis(k + 1), Expr::constant(c.clone()))))
        };
        let (va, vb) = (vec_of(&xa), vec_of(&xb));
        let mut q = Coeff::zero();
        for k in 0..n {
            q += &xa[k] * &xb[k] * Coeff::from_integer(square_of(s, k + 1).into());
        }
        ensure(va.inner(&vb).unwrap() == Multivector::scalar(s, Expr::constant(q)), || {
            format!("vector inner product is not the quadratic form in {s}")
        })?;
        let mut wedge = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &xa[i] * &xb[j] - &xa[j] * &xb[i];
                wedge.push((Blade::from_indices(&[i + 1, j + 1]), Expr::constant(c)));
            }
        }
        ensure(va.outer(&vb).unwrap() == Multivector::from_terms(s, wedge), || {
            format!("vector outer product has wrong components in {s}")
        })?;
    }
    Ok(format!("{cases} pairs"))
}

/// Sign of reversing the factor list of a blade, by re-sorting it with the
/// reference product.
fn reference_reverse_sign(s: Signature, idx: &[usize]) -> i32 {
    let rev: Vec<usize> = idx.iter().rev().copied().collect();
    let mut sign = 1;
    let mut acc: Vec<usize> = Vec::new();
    for k in rev {
        let (sg, out) = ref_blade_product(s, &acc, &[k]);
        sign *= sg;
        acc = out;
    }
    assert_eq!(acc, idx);
    sign
}

/// Sign patterns of the involutions for grades 0..=4 plus the (anti-)automorphism laws.
pub fn involutions(seed: u64, cases: usize) -> Check {
    // k mod 4 -> sign: reversion + + - -, conjugation + - - +
    const REVERSE: [i32; 4] = [1, 1, -1, -1];
    const CONJUGATE: [i32; 4] = [1, -1, -1, 1];
    let s = sig(4, 0, 0);
    for k in 0..=4 {
        for b in Blade::of_grade(&s, k) {
            let m = Multivector::from_blade(s, b, Expr::one());
            let sign_of = |x: &Multivector| if *x == m { 1 } else if *x == m.neg() { -1 } else { 0 };
            let rev = sign_of(&m.reverse());
            ensure(rev == REVERSE[k % 4] && rev == reference_reverse_sign(s, &b.indices()), || {
                format!("reversion sign of grade {k}")
            })?;
            ensure(sign_of(&m.conjugate()) == CONJUGATE[k % 4], || format!("conjugation sign of grade {k}"))?;
            let inv = if k % 2 == 0 { 1 } else { -1 };
            ensure(sign_of(&m.grade_involution()) == inv, || format!("involution sign of grade {k}"))?;
        }
    }
    let sigs = signatures_up_to(4);
    let mut r = rng(seed);
    for i in 0..cases {
        let s = sigs[i % sigs.len()];
        let (a, b) = (random_symbolic_mv(&mut r, s, &vars()), random_numeric_mv(&mut r, s));
        let ab = a.gp(&b).unwrap();
        ensure(ab.reverse() == b.reverse().gp(&a.reverse()).unwrap(), || format!("reverse(AB) in {s}"))?;
        ensure(ab.conjugate() == b.conjugate().gp(&a.conjugate()).unwrap(), || format!("conjugate(AB) in {s}"))?;
        ensure(ab.grade_involution() == a.grade_involution().gp(&b.grade_involution()).unwrap(), || {
            format!("involute(AB) in {s}")
        })?;
        ensure(a.reverse().reverse() == a && a.conjugate().conjugate() == a, || format!("not involutive in {s}"))?;
        ensure(a.conjugate() == a.reverse().grade_involution(), || format!("conjugate != reverse∘involute in {s}"))?;
    }
    Ok(format!("grades 0..4 against the sign table, {cases} product cases"))
}

/// `Σ_k <A>_k = A`, `<<A>_j>_k = δ_jk <A>_j`, and each part is homogeneous.
pub fn grade_projection(seed: u64, cases: usize) -> Check {
    let sigs = signatures_up_to(4);
    let mut r = rng(seed);
    for i in 0..cases {
        let s = sigs[i % sigs.len()];
        let a = random_symbolic_mv(&mut r, s, &vars());
        let mut sum = Multivector::zero(s);
        for j in 0..=s.dim() {
            let pj = a.grade_part(j).unwrap();
            ensure(pj.terms().all(|(b, _)| b.grade() == j), || format!("grade {j} part not homogeneous"))?;
            for k in 0..=s.dim() {
                let pjk = pj.grade_part(k).unwrap();
                let want = if j == k { pj.clone() } else { Multivector::zero(s) };
                ensure(pjk == want, || format!("<<A>_{j}>_{k} wrong in {s}"))?;
            }
            sum = sum.add(&pj).unwrap();
        }
        ensure(sum == a, || format!("grade parts do not sum back in {s}"))?;
        ensure(a.grade_part(s.dim() + 1).is_err(), || "out-of-range grade accepted".into())?;
    }
    Ok(format!("{cases} multivectors"))
}

/// Two-sided inverses of `per_sig` random invertible elements in each of
/// Cl(0,2) and Cl(3,0), with the products recomputed by the reference
/// product; elements reported non-invertible must have a zero-divisor
/// witness `A·X = 0` with `X != 0`.
pub fn inverses(seed: u64, per_sig: usize) -> Check {
    let mut r = rng(seed);
    let mut singular = 0;
    for s in [sig(0, 2, 0), sig(3, 0, 0)] {
        let one: Ref<Coeff> = [(vec![], Coeff::one())].into_iter().collect();
        let mut found = 0;
        while found < per_sig {
            let a = random_numeric_mv(&mut r, s);
            match a.inverse() {
                Ok(inv) => {
                    let (ra, ri) = (to_ref(&a), to_ref(&inv));
                    ensure(ref_gp(s, &ra, &ri) == one && ref_gp(s, &ri, &ra) == one, || {
                        format!("inverse of {a} in {s} is not two-sided")
                    })?;
                    ensure(a.gp(&inv).unwrap() == Multivector::one(s), || format!("library A·A⁻¹ != 1 for {a}"))?;
                    found += 1;
                }
                Err(AlgebraError::NotInvertible(_)) => {
                    singular += 1;
                    ensure(has_zero_divisor_witness(s, &a), || format!("{a} in {s} reported singular without witness"))?;
                }
                Err(e) => return Err(format!("unexpected error {e}")),
            }
        }
    }
    Ok(format!("{per_sig} per signature, {singular} singular draws certified"))
}

/// Looks for `X != 0` with `A·X = 0` by solving the left-multiplication
/// matrix over the rationals.
fn has_zero_divisor_witness(s: Signature, a: &Multivector) -> bool {
    let blades: Vec<Vec<usize>> = Blade::all(&s).iter().map(|b| b.indices()).collect();
    let n = blades.len();
    let ra = to_ref(a);
    // column j = A · e_j
    let mut m = vec![vec![Coeff::zero(); n]; n];
    for (j, bj) in blades.iter().enumerate() {
        let col = ref_gp(s, &ra, &[(bj.clone(), Coeff::one())].into_iter().collect());
        for (i, bi) in blades.iter().enumerate() {
            if let Some(c) = col.get(bi) {
                m[i][j] = c.clone();
            }
        }
    }
    rank(m) < n
}

fn rank(mut m: Vec<Vec<Coeff>>) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rk, p);
        for i in 0..rows {
            if i != rk && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rk][c];
                for k in 0..cols {
                    let v = &m[rk][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        rk += 1;
    }
    rk
}

/// Library blade products and numeric geometric products against the
/// list-sorting reference for every signature with n <= 3.
pub fn structure_constants(seed: u64, products_per_sig: usize) -> Check {
    let sigs = signatures_up_to(3);
    let mut r = rng(seed);
    let mut pairs = 0;
    for &s in &sigs {
        let blades = Blade::all(&s);
        for &a in &blades {
            for &b in &blades {
                let (sign, out) = blade_product(a, b, &s);
                let (rs, rout) = ref_blade_product(s, &a.indices(), &b.indices());
                let ok = sign as i32 == rs && (rs == 0 || out.indices() == rout);
                ensure(ok, || format!("{a:?}·{b:?} in {s}: library ({sign}, {out:?}), reference ({rs}, {rout:?})"))?;
                pairs += 1;
            }
        }
        for _ in 0..products_per_sig {
            let (a, b) = (random_numeric_mv(&mut r, s), random_numeric_mv(&mut r, s));
            ensure(to_ref(&a.gp(&b).unwrap()) == ref_gp(s, &to_ref(&a), &to_ref(&b)), || {
                format!("gp({a}, {b}) in {s} disagrees with the reference")
            })?;
        }
        let _ = r.gen::<u8>();
    }
    Ok(format!("{pairs} blade pairs over {} signatures", sigs.len()))
}

/// `mvectdiff` on `fields` random fields against an oracle that builds
/// `Σ sign · B⁻¹ · ∂F/∂x` from central differences and reference products.
/// Signatures, directions (blades of any grade, either sign) and points are
/// random; tolerance is relative `rel`.
pub fn derivative_numerics(seed: u64, fields: usize, rel: f64) -> Check {
    use cliffkernel::calculus::{mvectdiff, DirTerm, Direction};
    use cliffkernel::symexpr::SymbolTable;

    let coords = syms(&["t", "x", "y", "z"]);
    let mut table = SymbolTable::new();
    for c in &coords {
        table.declare_coordinate(c).unwrap();
    }
    let sigs: Vec<Signature> = signatures_up_to(3);
    let mut r = rng(seed);
    let mut compared = 0;
    for _ in 0..fields {
        let s = sigs[r.gen_range(0..sigs.len())];
        let usable: Vec<Blade> = Blade::all(&s).into_iter().filter(|b| ref_blade_product(s, &b.indices(), &b.indices()).0 != 0).collect();
        let mut terms = Vec::new();
        for c in &coords {
            if r.gen_bool(0.7) {
                let blade = usable[r.gen_range(0..usable.len())];
                terms.push(DirTerm { sign: if r.gen_bool(0.5) { 1 } else { -1 }, coord: c.clone(), blade });
            }
        }
        if terms.is_empty() {
            terms.push(DirTerm { sign: 1, coord: coords[1].clone(), blade: usable[0] });
        }
        let dir = Direction::new(s, terms.clone()).map_err(|e| e.to_string())?;

        let all = Blade::all(&s);
        let mut field = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            field.push((all[r.gen_range(0..all.len())], random_expr(&mut r, &coords)));
        }
        let f = Multivector::from_terms(s, field);
        let df = mvectdiff(&f, &dir, &table).map_err(|e| e.to_string())?;

        let p = random_point(&mut r, coords.len());
        let at = bindings(&coords, &p);
        let mut oracle: Ref<f64> = BTreeMap::new();
        for t in &terms {
            let k = coords.iter().position(|c| *c == t.coord).unwrap();
            let idx = t.blade.indices();
            let (sq, _) = ref_blade_product(s, &idx, &idx);
            let recip: Ref<f64> = [(idx, (t.sign as i32 * sq) as f64)].into_iter().collect();
            let partial: Ref<f64> = f.terms().map(|(b, c)| (b.indices(), central_diff(c, &coords, &p, k, 1e-5))).collect();
            for (b, v) in ref_gp_f64(s, &recip, &partial) {
                *oracle.entry(b).or_insert(0.0) += v;
            }
        }
        for b in &all {
            let want = oracle.get(&b.indices()).copied().unwrap_or(0.0);
            let got = df.get(*b).eval(&at).map_err(|e| e.to_string())?;
            ensure(close(got, want, rel), || format!("d({f}) along {dir:?}, blade {b:?} at {p:?}: {got} vs {want}"))?;
            compared += 1;
        }
    }
    Ok(format!("{fields} fields, {compared} coefficients"))
}
