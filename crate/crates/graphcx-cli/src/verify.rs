//! Verification suites run by `graphcx verify`.

use std::collections::HashMap;

use graphcx::complexes::{
    conv_bracket, conv_diff, conv_mc, fgc_diff, fgc_diff_prop, iota_star, tw_diff_ger, tw_diff_gra, tw_diff_gra_literal, ConvElem,
    ConvKind, Left, TwGerVec,
};
use graphcx::ger::{basis as ger_basis, iota, GerVec, Grading};
use graphcx::gra::{av, FgcVec, GraVec};
use graphcx::graphs::{cable, class_info, enumerate_classes, enumerate_graphs, polygon, Constraints, LabeledGraph};
use graphcx::qlinalg::{rank, SparseMat};

/// One line of a report.
pub struct Item {
    pub name: String,
    pub outcome: Result<String, String>,
}

fn item(name: &str, outcome: Result<String, String>) -> Item {
    Item { name: name.to_string(), outcome }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fgc_d_squared() -> Result<String, String> {
    let mut count = 0;
    for nv in 1..=4 {
        for e in 0..=6 {
            for g in enumerate_graphs(nv, 0, e, &Constraints::default()).map_err(|e| e.to_string())? {
                let x = FgcVec::orbit(&g);
                let d = fgc_diff(&x);
                check(d == fgc_diff_prop(&x), || format!("the two formulas differ on {g}"))?;
                check(fgc_diff_prop(&d).is_zero(), || format!("d^2 != 0 on {g}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} graphs"))
}

fn twgra_d_squared() -> Result<String, String> {
    let mut count = 0;
    for r in 0..=3 {
        for n in 0..=2 {
            for e in 0..=4 {
                if r + n == 0 {
                    continue;
                }
                for g in enumerate_graphs(r, n, e, &Constraints::default()).map_err(|e| e.to_string())? {
                    let x = GraVec::orbit(&g);
                    let d = tw_diff_gra(&x);
                    check(d == tw_diff_gra_literal(&x), || format!("the two formulas differ on {g}"))?;
                    check(tw_diff_gra(&d).is_zero(), || format!("d^2 != 0 on {g}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} graphs"))
}

fn twger_d_squared() -> Result<String, String> {
    let mut count = 0;
    for r in 0..=2 {
        for n in 1..=2 {
            for m in ger_basis(r + n, Grading::Ger) {
                let x = TwGerVec::symmetrized(r, n, &m);
                check(tw_diff_ger(&tw_diff_ger(&x)).is_zero(), || format!("d^2 != 0 on r={r} n={n} {m}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} monomials"))
}

fn conv_d_squared(kind: ConvKind) -> Result<String, String> {
    let mut count = 0;
    for n in 1..=3 {
        let lefts: Vec<Left> = match kind {
            ConvKind::Ger => ger_basis(n, Grading::Ger).into_iter().map(Left::Mono).collect(),
            ConvKind::Gra => {
                let mut v = Vec::new();
                for e in 0..=2 {
                    for c in enumerate_classes(0, n, e, false, 9).map_err(|e| e.to_string())? {
                        v.push(Left::Graph(c.graph));
                    }
                }
                v
            }
        };
        for l in &lefts {
            for w in ger_basis(n, Grading::Lambda2Ger) {
                let x = ConvElem::symmetrized(l.clone(), w.clone()).map_err(|e| e.to_string())?;
                check(conv_diff(&conv_diff(&x)).is_zero(), || format!("d^2 != 0 on {l} (x) {w}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} tensors"))
}

pub fn d_squared() -> Vec<Item> {
    vec![
        item("fgc", fgc_d_squared()),
        item("twgra", twgra_d_squared()),
        item("twger", twger_d_squared()),
        item("conv-ger", conv_d_squared(ConvKind::Ger)),
        item("conv-gra", conv_d_squared(ConvKind::Gra)),
    ]
}

pub fn two_point_closed() -> Vec<Item> {
    [("two points", vec![]), ("two points joined", vec![(1, 2)])]
        .into_iter()
        .map(|(name, edges)| {
            let g = LabeledGraph::new(0, 2, edges).expect("valid graph");
            let d = tw_diff_gra(&GraVec::orbit(&g));
            let outcome = if d.is_zero() { Ok("d = 0".to_string()) } else { Err(format!("d = {d}")) };
            item(name, outcome)
        })
        .collect()
}

pub fn ger_dim(n: usize) -> Vec<Item> {
    let b = ger_basis(n, Grading::Ger);
    let fact: usize = (1..=n).product();
    let dim = if b.len() == fact { Ok(format!("{} = {n}!", b.len())) } else { Err(format!("{} != {fact}", b.len())) };
    let mut items = vec![item("dimension", dim)];
    if n <= 5 {
        let mut index: HashMap<LabeledGraph, usize> = HashMap::new();
        let mut cols = Vec::new();
        for m in &b {
            let mut col = Vec::new();
            for (g, c) in iota(&GerVec::basis_element(m.clone(), Grading::Ger)).terms() {
                let k = index.len();
                col.push((*index.entry(g.clone()).or_insert(k), c.clone()));
            }
            col.sort_by_key(|p| p.0);
            cols.push(col);
        }
        let rk = rank(&SparseMat::from_columns(index.len(), cols));
        let outcome = if rk == fact { Ok(format!("rank {rk}")) } else { Err(format!("rank {rk} < {fact}")) };
        items.push(item("iota injective", outcome));
    }
    items
}

pub fn maurer_cartan() -> Vec<Item> {
    let a = conv_mc(ConvKind::Ger);
    let ia = iota_star(&a);
    let zero = |x: ConvElem| if x.is_zero() { Ok("0".to_string()) } else { Err(x.to_string()) };
    vec![item("[alpha, alpha]", zero(conv_bracket(&a, &a))), item("[iota alpha, iota alpha]", zero(conv_bracket(&ia, &ia)))]
}

pub fn parity() -> Vec<Item> {
    let mut items = vec![
        item("square odd", if class_info(&polygon(4)).odd { Ok("odd".into()) } else { Err("even".into()) }),
        item("pentagon even", if class_info(&polygon(5)).odd { Err("odd".into()) } else { Ok("even".into()) }),
    ];
    let cables: Vec<usize> = (1..=10).filter(|&l| av(&cable(l)).is_zero() != matches!(l % 4, 0 | 3)).collect();
    items.push(item("cables", if cables.is_empty() { Ok("l <= 10".into()) } else { Err(format!("wrong at {cables:?}")) }));
    let polys: Vec<usize> = (1..=9).filter(|&m| av(&polygon(m)).is_zero() != (m % 4 != 1)).collect();
    items.push(item("polygons", if polys.is_empty() { Ok("m <= 9".into()) } else { Err(format!("wrong at {polys:?}")) }));
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for it in two_point_closed().into_iter().chain(ger_dim(4)).chain(maurer_cartan()).chain(parity()) {
            assert!(it.outcome.is_ok(), "{}: {:?}", it.name, it.outcome);
        }
    }
}
