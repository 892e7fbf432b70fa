use std::collections::{BTreeSet, HashMap, HashSet};

use crate::atoms::{first_atoms, AtomSet};
use crate::catalog::{self, Gen};
use crate::error::Result;
use crate::oracle::{brute, Universe};
use crate::orbitset::OrbitSet;
use crate::presheaf::{
    colimit_chain, compare_components, head_and_tail, r_star_component, rel_from_setvalued, Level,
    PresheafTable, DEFAULT_SIZE_GUARD,
};
use crate::relation::FsRel;
use crate::value::Value;

use super::{Both, LawCheck, Outcome, SuiteConfig, Tally};

/// Oracle images of each descriptor of `level` under `r`, inside `u`.
pub(super) fn descriptor_images(r: &FsRel, level: &Level, u: &Universe) -> Vec<BTreeSet<Value>> {
    let wide = u.extended(r.dom().max_free_support());
    let mut images: HashMap<Value, BTreeSet<Value>> = HashMap::new();
    for (x, y) in wide.pairs(r) {
        if u.contains(&y) {
            images.entry(x).or_default().insert(y);
        }
    }
    level
        .descriptors()
        .iter()
        .map(|d| {
            wide.members(d)
                .iter()
                .filter_map(|x| images.get(x))
                .flatten()
                .cloned()
                .collect()
        })
        .collect()
}

pub(super) fn union_of(parts: &[BTreeSet<Value>], mask: u64) -> BTreeSet<Value> {
    parts
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .flat_map(|(_, s)| s.iter().cloned())
        .collect()
}

fn members_of(level: &Level, u: &Universe) -> Vec<BTreeSet<Value>> {
    level.descriptors().iter().map(|d| u.members(d)).collect()
}

/// The levels `∅ ⊆ {a} ⊆ {a, b}` used throughout.
fn small_levels() -> Vec<AtomSet> {
    (0..3).map(first_atoms).collect()
}

/// Descriptor counts of `x` at the given levels, computed symbolically and
/// by counting orbits on a bounded universe.
pub fn descriptor_counts(
    x: &OrbitSet,
    levels: &[AtomSet],
    cfg: &SuiteConfig,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let top: AtomSet = levels.iter().flatten().copied().collect();
    let u = cfg.universe_with(&[], &[x], &top);
    let members = u.members(x);
    let mut sym = Vec::new();
    let mut oracle = Vec::new();
    for a in levels {
        sym.push(
            Level::new(x, a.clone(), DEFAULT_SIZE_GUARD)?
                .descriptors()
                .len(),
        );
        oracle.push(brute::orbit_count(&members, a, &u));
    }
    Ok((sym, oracle))
}

/// `R_*` on the head and tail relations `D → D^(2)` at `|A| ≤ 2`.
pub fn not_faithful(cfg: &SuiteConfig) -> LawCheck {
    let (head, tail) = head_and_tail();
    let levels = small_levels();
    let mut t = Tally::new("not-faithful");
    let top: AtomSet = first_atoms(2);
    let u = cfg.universe_with(&[&head, &tail], &[], &top);
    t.saw_universe(&u);
    let outcome = compare_components(&head, &tail, &levels).and_then(|report| {
        let mut same_images = true;
        for a in &levels {
            let level = Level::new(head.dom(), a.clone(), DEFAULT_SIZE_GUARD)?;
            let hi = descriptor_images(&head, &level, &u);
            let ti = descriptor_images(&tail, &level, &u);
            same_images &= (0..level.size()).all(|m| union_of(&hi, m) == union_of(&ti, m));
        }
        let oracle = same_images && u.pairs(&head) != u.pairs(&tail);
        let witness = report.first_difference.as_ref().map(|(a, k)| {
            format!(
                "components differ at A = {}, K = {k}",
                crate::orbitset::fmt_atoms(a)
            )
        });
        Ok((
            Outcome::holds(Both::new(report.shows_non_faithful(), oracle)),
            witness,
        ))
    });
    match outcome {
        Ok((o, w)) => t.record(o, || w.unwrap_or_else(|| "relations are equal".into())),
        Err(e) => t.record_result(Err(e), || "head and tail".into()),
    }
    t.finish()
}

pub(super) fn presheaf(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let mut out = Vec::new();
    let d = catalog::d();
    let levels = small_levels();

    let mut t = Tally::new("descriptor-counts");
    let expected = [1usize, 2, 4];
    let res = descriptor_counts(&d, &levels, cfg).map(|(sym, oracle)| {
        let w = format!("counts {sym:?} (oracle {oracle:?}), expected {expected:?}");
        (
            Outcome::holds(Both::new(sym == expected, oracle == expected)),
            w,
        )
    });
    t.saw_universe(&cfg.universe_with(&[], &[&d], &first_atoms(2)));
    match res {
        Ok((o, w)) => t.record(o, || w),
        Err(e) => t.record_result(Err(e), || "D".into()),
    }
    out.push(t.finish());

    let mut t = Tally::new("level-sizes");
    for (name, x) in catalog::base_sets() {
        let res = descriptor_counts(&x, &levels, cfg).and_then(|(sym, oracle)| {
            let sizes: Vec<u64> = levels
                .iter()
                .map(|a| Level::new(&x, a.clone(), DEFAULT_SIZE_GUARD).map(|l| l.size()))
                .collect::<Result<_>>()?;
            let pow = |c: &Vec<usize>| c.iter().map(|&n| 1u64 << n).collect::<Vec<_>>();
            let monotone = |c: &Vec<usize>| c.windows(2).all(|w| w[0] <= w[1]);
            Ok(Outcome::holds(Both::new(
                sizes == pow(&sym) && monotone(&sym),
                sizes == pow(&oracle) && monotone(&oracle),
            )))
        });
        t.record_result(res, || name.to_string());
    }
    out.push(t.finish());

    let mut t = Tally::new("rstar-naturality");
    for i in 0..cfg.cases_or(20) {
        let x = gen.small_set();
        let y = gen.small_set();
        let r = gen.equivariant_rel(&x, &y);
        let u = cfg.universe_with(&[&r], &[], &first_atoms(2));
        t.saw_universe(&u);
        t.record_result(rstar_naturality(&r, &levels, &u), || {
            format!("case {i}: R = {r}")
        });
    }
    out.push(t.finish());

    out.push(not_faithful(cfg));

    let mut colimit = Tally::new("colimit-size");
    let mut functorial = Tally::new("restriction-functorial");
    for i in 0..cfg.cases_or(10) {
        let chain = gen.chain(3);
        let top = chain.last().expect("non-empty chain").len();
        let x = if top <= 2 && gen.chance(0.5) {
            catalog::d2()
        } else {
            d.clone()
        };
        let u = cfg.universe_with(&[], &[&x], chain.last().expect("non-empty chain"));
        colimit.saw_universe(&u);
        functorial.saw_universe(&u);
        let table = match PresheafTable::build(&x, &chain, DEFAULT_SIZE_GUARD) {
            Ok(t) => t,
            Err(e) => {
                colimit.record_result(Err(e), || format!("chain {i}"));
                continue;
            }
        };
        colimit.record_result(colimit_law(&table, &u), || format!("chain {i} over {x}"));
        functorial.record(restriction_law(&table, &u), || {
            format!("chain {i} over {x}")
        });
    }
    out.push(colimit.finish());
    out.push(functorial.finish());

    out.push(set_valued_unit(cfg));
    out
}

fn rstar_naturality(r: &FsRel, levels: &[AtomSet], u: &Universe) -> Result<Outcome> {
    let dom = PresheafTable::build(r.dom(), levels, DEFAULT_SIZE_GUARD)?;
    let cod = PresheafTable::build(r.cod(), levels, 64)?;
    let mut sym = true;
    let mut oracle = true;
    for (i, j) in dom.inclusions() {
        let (li, lj) = (&dom.levels()[i], &dom.levels()[j]);
        let (ci, cj) = (&cod.levels()[i], &cod.levels()[j]);
        let images_j = descriptor_images(r, lj, u);
        let cod_members = members_of(cj, u);
        for mask in 0..li.size() {
            let up = dom.restrict(i, j, mask).expect("recorded");
            let left = cj.decompose(&r_star_component(r, lj.atoms(), &lj.element(up))?)?;
            let below = ci.decompose(&r_star_component(r, li.atoms(), &li.element(mask))?)?;
            let right = cod.restrict(i, j, below).expect("recorded");
            sym &= left == right;
            let image = union_of(&images_j, up);
            oracle &=
                union_of(&cod_members, left) == image && union_of(&cod_members, right) == image;
        }
    }
    Ok(Outcome::holds(Both::new(sym, oracle)))
}

fn colimit_law(table: &PresheafTable, u: &Universe) -> Result<Outcome> {
    let classes = colimit_chain(table)?;
    let top = table.levels().iter().map(|l| l.size()).max().unwrap_or(1);
    let mut denotations = HashSet::new();
    for level in table.levels() {
        let parts = members_of(level, u);
        for mask in 0..level.size() {
            denotations.insert(union_of(&parts, mask));
        }
    }
    Ok(Outcome::holds(Both::new(
        classes.len() as u64 == top,
        denotations.len() as u64 == top,
    )))
}

fn restriction_law(table: &PresheafTable, u: &Universe) -> Outcome {
    let levels = table.levels();
    let incl: Vec<(usize, usize)> = table.inclusions().collect();
    let mut sym = true;
    let mut oracle = true;
    for &(i, j) in &incl {
        let (pi, pj) = (members_of(&levels[i], u), members_of(&levels[j], u));
        let mut seen = HashSet::new();
        for mask in 0..levels[i].size() {
            let up = table.restrict(i, j, mask).expect("recorded");
            sym &= seen.insert(up);
            oracle &= union_of(&pi, mask) == union_of(&pj, up);
            for &(j2, k) in &incl {
                if j2 == j {
                    let direct = table.restrict(i, k, mask);
                    sym &= direct == table.restrict(j, k, up);
                }
            }
        }
    }
    Outcome::holds(Both::new(sym, oracle))
}

fn set_valued_unit(cfg: &SuiteConfig) -> LawCheck {
    let mut t = Tally::new("set-valued-unit");
    let d = catalog::d();
    let a = Value::atom(0);
    let here = OrbitSet::singleton(&a);
    let others = d
        .refine(&first_atoms(1))
        .expect("refinement")
        .difference(&here);
    let fixtures: Vec<(&str, OrbitSet, Vec<(Value, OrbitSet)>, FsRel)> = vec![
        (
            "unit on D",
            d.clone(),
            vec![(a.clone(), here.clone())],
            FsRel::identity(&d),
        ),
        (
            "others on D",
            d.clone(),
            vec![(a.clone(), others)],
            FsRel::freshness(&d, &d),
        ),
        (
            "empty on D",
            d.clone(),
            vec![(a.clone(), OrbitSet::empty())],
            FsRel::empty(&d, &d),
        ),
        (
            "unit on D2",
            catalog::d2(),
            {
                let ab = Value::pair(Value::atom(0), Value::atom(1));
                vec![(ab.clone(), OrbitSet::singleton(&ab))]
            },
            FsRel::identity(&catalog::d2()),
        ),
    ];
    for (name, x, f, expected) in fixtures {
        let res = rel_from_setvalued(&x, &x, &f).map(|rf| {
            let u = cfg.universe(&[&rf, &expected], &[]);
            t.saw_universe(&u);
            let unit = f
                .iter()
                .all(|(g, img)| rf.direct_image(&OrbitSet::singleton(g)).same_set(img));
            let ounit = f.iter().all(|(g, img)| {
                brute::direct_image(&rf, &OrbitSet::singleton(g), &u) == u.members(img)
            });
            Outcome::holds(Both::new(
                rf.rel_equal(&expected) && unit,
                u.pairs(&rf) == u.pairs(&expected) && ounit,
            ))
        });
        t.record_result(res, || name.to_string());
    }
    t.finish()
}

pub(super) fn discrepancy(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let head = catalog::head();
    let proj = catalog::first_projection();
    let mut out = Vec::new();

    let mut t = Tally::new("head-then-projection-is-diagonal");
    let u = cfg.universe(&[&head, &proj], &[]);
    t.saw_universe(&u);
    let delta = FsRel::identity(&catalog::d());
    t.record_result(
        FsRel::compose(&proj, &head).map(|c| {
            Outcome::holds(Both::new(
                c.rel_equal(&delta),
                brute::compose(&proj, &head, &u) == brute::identity(&catalog::d(), &u),
            ))
        }),
        || "first-projection after head".into(),
    );
    out.push(t.finish());

    let mut t = Tally::new("projection-then-head-exceeds-diagonal");
    t.saw_universe(&u);
    let delta2 = FsRel::identity(&catalog::d2());
    t.record_result(
        FsRel::compose(&head, &proj).map(|c| {
            let oc = brute::compose(&head, &proj, &u);
            let od = brute::identity(&catalog::d2(), &u);
            Outcome::holds(Both::new(
                delta2.is_subset(&c) && !c.rel_equal(&delta2),
                od.is_subset(&oc) && oc != od,
            ))
        }),
        || "head after first-projection".into(),
    );
    out.push(t.finish());
    out
}
