//! Built-in groups with documented element orderings.

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Catalog entries as accepted by `catalog:<name> <params>`.
pub fn catalog_names() -> Vec<&'static str> {
    let mut names = vec![
        "abelian d1 d2 ...",
        "alt4",
        "cyclic n",
        "dihedral n",
        "elementary-abelian p^k",
        "heisenberg 3",
        "quaternion8",
        "sym n",
        "trivial",
    ];
    names.sort_unstable();
    names
}

fn build(name: String, n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<FiniteGroup> {
    let cap = crate::config::caps().max_order;
    if n > cap {
        return Err(Error::cap("group order", n, cap));
    }
    let mut mult = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mult.push(f(a, b) as u32);
        }
    }
    FiniteGroup::from_flat(name, n, mult)
}

/// `Z/n`, element `i` is `i mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic 0".into()));
    }
    Ok(build(format!("cyclic {n}"), n, |a, b| (a + b) % n)?
        .with_labels((0..n).map(|i| i.to_string()).collect()))
}

pub fn trivial() -> FiniteGroup {
    cyclic(1).expect("trivial group").with_name("trivial")
}

/// Dihedral group of order `2n`; element `i + n·j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidGroup("dihedral 0".into()));
    }
    let g = build(format!("dihedral {n}"), 2 * n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })?;
    let labels = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (i, 0) => format!("r{i}"),
                (0, _) => "s".to_string(),
                (i, _) => format!("r{i}s"),
            }
        })
        .collect();
    Ok(g.with_labels(labels))
}

/// Quaternion group ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> FiniteGroup {
    // unit u in {1,i,j,k} = 0..4 and sign bit; index = 2*u + sign
    fn mul_units(a: usize, b: usize) -> (usize, bool) {
        // returns (unit, negative)
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let g = build("quaternion8".into(), 8, |a, b| {
        let (ua, sa) = (a / 2, a % 2 == 1);
        let (ub, sb) = (b / 2, b % 2 == 1);
        let (u, neg) = mul_units(ua, ub);
        2 * u + usize::from(neg ^ sa ^ sb)
    })
    .expect("quaternion table");
    g.with_labels(
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, n, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

fn parity(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// Group on an explicit list of permutations (closed under composition),
/// with `(σ·τ)(x) = σ(τ(x))`.
pub(crate) fn from_permutation_list(name: String, perms: &[Vec<usize>]) -> Result<FiniteGroup> {
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut err = None;
    let g = build(name, n, |a, b| {
        let c: Vec<usize> = perms[b].iter().map(|&x| perms[a][x]).collect();
        match index.get(c.as_slice()) {
            Some(&i) => i,
            None => {
                err = Some(Error::InvalidGroup("permutation list not closed".into()));
                0
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let g = g?;
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    Ok(g.with_labels(labels))
}

/// Symmetric group; elements are image tuples in lexicographic order.
pub fn sym(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidGroup(format!("sym {n} unsupported (1..=5)")));
    }
    from_permutation_list(format!("sym {n}"), &permutations(n))
}

/// Alternating group on 4 points, even image tuples in lexicographic order.
pub fn alt4() -> FiniteGroup {
    let perms: Vec<Vec<usize>> = permutations(4).into_iter().filter(|p| parity(p)).collect();
    from_permutation_list("alt4".into(), &perms).expect("alt4")
}

/// `(Z/p)^k`; element `Σ a_i p^i` is the vector `(a_0, …, a_{k-1})`.
pub fn elementary_abelian(p: usize, k: u32) -> Result<FiniteGroup> {
    if p < 2 {
        return Err(Error::InvalidGroup("p must be at least 2".into()));
    }
    let mut g = abelian(&vec![p; k as usize])?;
    g.name = format!("elementary-abelian {p}^{k}");
    Ok(g)
}

/// `Z/d_1 × … × Z/d_k`, mixed radix with the first factor fastest.
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup> {
    if factors.contains(&0) {
        return Err(Error::InvalidGroup("zero modulus".into()));
    }
    let n: usize = factors.iter().product();
    let digits = |mut x: usize| {
        factors
            .iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect::<Vec<_>>()
    };
    let name = format!(
        "abelian {}",
        factors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    );
    let g = build(name, n, |a, b| {
        let (da, db) = (digits(a), digits(b));
        let mut x = 0;
        let mut scale = 1;
        for (i, &d) in factors.iter().enumerate() {
            x += ((da[i] + db[i]) % d) * scale;
            scale *= d;
        }
        x
    })?;
    let labels = (0..n)
        .map(|x| {
            let d = digits(x);
            format!("({})", d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        })
        .collect();
    Ok(g.with_labels(labels))
}

/// Heisenberg group mod 3: `(a,b,c)` ↦ index `a + 3b + 9c`, product
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup> {
    if p != 3 {
        return Err(Error::InvalidGroup("heisenberg is provided for p = 3".into()));
    }
    let dec = |x: usize| (x % 3, (x / 3) % 3, x / 9);
    build("heisenberg 3".into(), 27, |x, y| {
        let (a, b, c) = dec(x);
        let (a2, b2, c2) = dec(y);
        (a + a2) % 3 + 3 * ((b + b2) % 3) + 9 * ((c + c2 + a * b2) % 3)
    })
}

/// `A × B` with `(a, b)` at index `a + |A|·b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let g = build(format!("{} x {}", a.name(), b.name()), na * nb, |x, y| {
        a.mul(x % na, y % na) + na * b.mul(x / na, y / na)
    })?;
    let labels = (0..na * nb)
        .map(|x| format!("({},{})", a.label(x % na), b.label(x / na)))
        .collect();
    Ok(g.with_labels(labels))
}

pub(crate) fn by_name(name: &str, params: &[&str]) -> Result<FiniteGroup> {
    let int = |i: usize| -> Result<usize> {
        params
            .get(i)
            .ok_or_else(|| Error::Parse(format!("catalog {name}: missing parameter")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("catalog {name}: {e}")))
    };
    match name {
        "cyclic" => cyclic(int(0)?),
        "dihedral" => dihedral(int(0)?),
        "quaternion8" | "quaternion" => Ok(quaternion8()),
        "sym" => sym(int(0)?),
        "alt4" => Ok(alt4()),
        "trivial" => Ok(trivial()),
        "heisenberg" => heisenberg(params.first().map_or(Ok(3), |_| int(0))?),
        "abelian" => {
            let fs = (0..params.len()).map(int).collect::<Result<Vec<_>>>()?;
            abelian(&fs)
        }
        "elementary-abelian" => {
            let (p, k) = match params {
                [pk] if pk.contains('^') => {
                    let (p, k) = pk.split_once('^').expect("checked");
                    (p.parse::<usize>(), k.parse::<u32>())
                }
                [p, k] => (p.parse::<usize>(), k.parse::<u32>()),
                _ => return Err(Error::Parse("elementary-abelian expects p^k".into())),
            };
            let p = p.map_err(|e| Error::Parse(e.to_string()))?;
            let k = k.map_err(|e| Error::Parse(e.to_string()))?;
            elementary_abelian(p, k)
        }
        other => Err(Error::Parse(format!("unknown catalog group '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(cyclic(4).unwrap().order(), 4);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(sym(3).unwrap().order(), 6);
        assert_eq!(sym(4).unwrap().order(), 24);
        assert_eq!(alt4().order(), 12);
        assert_eq!(elementary_abelian(2, 3).unwrap().order(), 8);
        assert_eq!(heisenberg(3).unwrap().order(), 27);
    }

    #[test]
    fn cyclic_table_is_addition() {
        let g = cyclic(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.mul(i, j), (i + j) % 4);
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(sym(3).unwrap().conjugacy_classes().len(), 3);
        assert_eq!(dihedral(4).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(quaternion8().conjugacy_classes().len(), 5);
        assert_eq!(alt4().conjugacy_classes().len(), 4);
        assert_eq!(sym(4).unwrap().conjugacy_classes().len(), 5);
        assert!(!heisenberg(3).unwrap().is_abelian());
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        assert!(!quaternion8().is_isomorphic(&dihedral(4).unwrap()));
        assert!(abelian(&[2, 2]).unwrap().is_isomorphic(&elementary_abelian(2, 2).unwrap()));
    }
}
