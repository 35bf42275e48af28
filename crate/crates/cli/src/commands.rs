//! The subcommands, as pure functions from loaded documents to output lines.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use ihsimp::algebra::{Coefficients, HomologyResult};
use ihsimp::blowup::{
    blowup_cohomology_rel_residual, blown_up_cohomology, join_cohomology_direct, join_cohomology_oracle,
    relative_decomposition_sum, restriction_surjectivity, BlowupComplex, DecomposedSimplex,
};
use ihsimp::chains::{
    intersection_homology, join_homology_direct, join_homology_oracle, residual_decomposition_check, Perversity,
};
use ihsimp::complex::{barycentric_subdivision, clots, FilteredComplex, Simplex};
use ihsimp::corpus;
use ihsimp::products::{check_laws, BlowupAlgebra, GlobalPiStar, LocalPiStar, OrderedCochains};
use ihsimp::subdivision::{comparison_check, tower, tower_is_stable};

use crate::document::{ComplexDocument, Loaded};
use crate::report::{group, groups, integer, Record};
use crate::{CliError, Outcome, Ring};

/// Exhaustive associativity on the blow-up is cubic in the number of
/// classes; above this size the blow-up cup check is skipped.
pub const BLOWUP_CUP_LIMIT: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Residual,
    Join,
    BlowupJoin,
    Restriction,
    Subdivision,
    Cup,
    Pistar,
    All,
}

const SUITES: [Suite; 7] =
    [Suite::Residual, Suite::Join, Suite::BlowupJoin, Suite::Restriction, Suite::Subdivision, Suite::Cup, Suite::Pistar];

pub fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    ComplexDocument::parse(&text)?.load()
}

fn ids(s: &Simplex) -> Value {
    Value::from(s.vertices().iter().map(|v| v.0).collect::<Vec<_>>())
}

fn fullness_record(k: &FilteredComplex) -> Record {
    let w = k.fullness_witness();
    Record::new("full", "every simplex meets each K_l in one face at level l", None, w.is_none(), || {
        let (i, l) = w.expect("a witness on failure");
        json!({"simplex": ids(k.simplex(i)), "level": l})
    })
}

pub fn check_full(doc: &Loaded) -> Outcome {
    let r = fullness_record(&doc.complex);
    Outcome { failed: r.failed(), lines: vec![r.to_line()] }
}

/// The stratum table, so that table perversities can be authored.
pub fn strata(doc: &Loaded) -> Outcome {
    let k = &doc.complex;
    let lines = k
        .strata()
        .iter()
        .map(|s| {
            let vertices: BTreeSet<u32> =
                s.simplices.iter().flat_map(|&i| k.simplex(i).vertices().iter().map(|v| v.0)).collect();
            json!({
                "level": s.level,
                "index": s.index,
                "codim": s.codim(k.n()),
                "regular": s.regular,
                "simplices": s.simplices.len(),
                "vertices": vertices,
            })
            .to_string()
        })
        .collect();
    Outcome { lines, failed: false }
}

/// `sd^depth K` as a document; table perversities are pulled back along
/// the carriers.
pub fn subdivide(doc: &Loaded, depth: usize) -> Result<(ComplexDocument, Outcome), CliError> {
    let k = &doc.complex;
    let mut cur = k.clone();
    let mut origin: Vec<usize> = (0..k.len()).collect();
    for _ in 0..depth {
        let sd = barycentric_subdivision(&cur).map_err(CliError::compute)?;
        origin = (0..sd.complex.len()).map(|i| origin[sd.carrier(i)]).collect();
        cur = sd.complex;
    }
    let perversities = doc
        .perversities
        .iter()
        .map(|p| p.pullback(k, &cur, &origin))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::compute)?;
    let name = if depth == 0 { doc.name.clone() } else { format!("{}-sd{depth}", doc.name) };
    let out = ComplexDocument::from_complex(&name, &cur, &perversities);
    let line = json!({"name": name, "depth": depth, "simplices": cur.len(), "full": cur.is_full()}).to_string();
    Ok((out, Outcome { lines: vec![line], failed: false }))
}

fn table(invariant: &str, doc: &Loaded, p: &Perversity, ring: Ring, h: &HomologyResult) -> Outcome {
    let top = doc.complex.dim().map_or(0, |d| d + 1).max(h.groups.len());
    let lines = (0..top)
        .map(|d| {
            let mut v = json!({"invariant": invariant, "perversity": p.name, "ring": ring.to_string(), "degree": d});
            v.as_object_mut().expect("object").extend(group(&h.group(d), h.characteristic).as_object().expect("object").clone());
            v.to_string()
        })
        .collect();
    Outcome { lines, failed: false }
}

/// Intersection homology `H^p̄_*`, one line per degree.
pub fn ih(doc: &Loaded, perversity: &str, ring: Ring) -> Result<Outcome, CliError> {
    let p = doc.perversity(perversity)?;
    let h = intersection_homology(&doc.complex, &p, ring.0).map_err(CliError::compute)?;
    Ok(table("intersection-homology", doc, &p, ring, &h))
}

/// Blown-up intersection cohomology `ℋ*_p̄`, one line per degree.
pub fn bih(doc: &Loaded, perversity: &str, ring: Ring) -> Result<Outcome, CliError> {
    let p = doc.perversity(perversity)?;
    let h = blown_up_cohomology(&doc.complex, &p, ring.0).map_err(CliError::compute)?;
    Ok(table("blown-up-cohomology", doc, &p, ring, &h))
}

/// A built-in complex with the `zero` and `top` perversities declared.
pub fn corpus_document(name: &str) -> Result<ComplexDocument, CliError> {
    let k = corpus::by_name(name)
        .ok_or_else(|| CliError::UnknownCorpus { name: name.to_string(), known: corpus::NAMES.join(", ") })?;
    Ok(ComplexDocument::from_complex(name, &k, &[Perversity::zero(k.n()), Perversity::top(k.n())]))
}

/// Runs a suite; a non-full complex fails the fullness check and nothing
/// else runs.
pub fn verify(doc: &Loaded, suite: Suite) -> Result<Outcome, CliError> {
    let k = &doc.complex;
    let full = fullness_record(k);
    let mut records = vec![full.clone()];
    if !full.failed() {
        let ps = doc.suite_perversities();
        let suites: Vec<Suite> = if suite == Suite::All { SUITES.to_vec() } else { vec![suite] };
        for s in suites {
            records.extend(run_suite(k, &ps, s)?);
        }
    }
    Ok(Outcome { failed: records.iter().any(Record::failed), lines: records.iter().map(Record::to_line).collect() })
}

fn run_suite(k: &FilteredComplex, ps: &[Perversity], suite: Suite) -> Result<Vec<Record>, CliError> {
    match suite {
        Suite::Residual => ps.iter().map(|p| residual(k, p)).collect(),
        Suite::Join => ps.iter().map(|p| join(k, p)).collect(),
        Suite::BlowupJoin => ps.iter().map(|p| blowup_join(k, p)).collect(),
        Suite::Restriction => {
            let mut out = Vec::new();
            for p in ps {
                out.extend(restriction(k, p)?);
            }
            Ok(out)
        }
        Suite::Subdivision => subdivision(k, ps),
        Suite::Cup => cup(k),
        Suite::Pistar => pistar(k),
        Suite::All => unreachable!("expanded by verify"),
    }
}

fn residual(k: &FilteredComplex, p: &Perversity) -> Result<Record, CliError> {
    let r = residual_decomposition_check(k, p).map_err(CliError::compute)?;
    Ok(Record::new(
        "residual",
        "C(K, L(K)) is the direct sum of C(b*L_b, db*L_b) over the clots b",
        Some(&p.name),
        r.bijective(),
        || {
            let bad = r.degrees.iter().find(|d| !d.bijective());
            json!({
                "cover": r.cover_ok,
                "intersections": r.intersections_ok,
                "degree": bad.map(|d| d.degree),
                "source_rank": bad.map(|d| d.source_rank),
                "target_rank": bad.map(|d| d.target_rank),
                "contained": bad.map(|d| d.contained),
                "determinant": bad.and_then(|d| d.determinant.as_ref()).map(integer),
            })
        },
    ))
}

fn compare_clots(
    check: &str,
    property: &str,
    k: &FilteredComplex,
    p: &Perversity,
    f: impl Fn(&Simplex) -> Result<(HomologyResult, HomologyResult), CliError>,
) -> Result<Record, CliError> {
    let len = k.dim().map_or(0, |d| d + 2);
    let mut mismatch = None;
    for bi in clots(k).map_err(CliError::compute)? {
        let beta = k.simplex(bi);
        let (oracle, direct) = f(beta)?;
        if oracle != direct {
            mismatch = Some(json!({"clot": ids(beta), "oracle": groups(&oracle, len), "direct": groups(&direct, len)}));
            break;
        }
    }
    let ok = mismatch.is_none();
    Ok(Record::new(check, property, Some(&p.name), ok, || mismatch.expect("a mismatch on failure")))
}

fn join(k: &FilteredComplex, p: &Perversity) -> Result<Record, CliError> {
    let z = Coefficients::Integers;
    compare_clots("join", "H(b*L) from H(L) truncated by Dp at the clot stratum", k, p, |b| {
        Ok((
            join_homology_oracle(k, b, p, z).map_err(CliError::compute)?,
            join_homology_direct(k, b, p, z).map_err(CliError::compute)?,
        ))
    })
}

fn blowup_join(k: &FilteredComplex, p: &Perversity) -> Result<Record, CliError> {
    let z = Coefficients::Integers;
    compare_clots("blowup-join", "blown-up cohomology of b*L from that of L truncated by p", k, p, |b| {
        Ok((
            join_cohomology_oracle(k, b, p, z).map_err(CliError::compute)?,
            join_cohomology_direct(k, b, p, z).map_err(CliError::compute)?,
        ))
    })
}

fn restriction(k: &FilteredComplex, p: &Perversity) -> Result<Vec<Record>, CliError> {
    let z = Coefficients::Integers;
    let r = restriction_surjectivity(k, p).map_err(CliError::compute)?;
    let onto = Record::new("restriction", "restriction to L(K) is onto", Some(&p.name), r.surjective(), || {
        let d = r.degrees.iter().find(|d| !(d.onto && d.extension_by_zero)).expect("a failing degree");
        json!({
            "degree": d.degree,
            "target_rank": d.target_rank,
            "image_rank": d.image_rank,
            "extension_by_zero": d.extension_by_zero,
        })
    });
    let len = k.dim().map_or(0, |d| d + 2);
    let whole = blowup_cohomology_rel_residual(k, p, z).map_err(CliError::compute)?;
    let sum = relative_decomposition_sum(k, p, z).map_err(CliError::compute)?;
    let decomposition = Record::new(
        "relative-decomposition",
        "blown-up cohomology of (K, L(K)) is the sum over clots of that of (b*L, L(b*L))",
        Some(&p.name),
        whole == sum,
        || json!({"whole": groups(&whole, len), "sum": groups(&sum, len)}),
    );
    Ok(vec![onto, decomposition])
}

fn subdivision(k: &FilteredComplex, ps: &[Perversity]) -> Result<Vec<Record>, CliError> {
    let r = comparison_check(k, ps).map_err(CliError::compute)?;
    let maps = Record::new("subdivision-maps", "phi and j are allowable cochain maps with j.phi = id", None, r.passed(), || {
        json!({
            "phi_cochain_map": r.phi_cochain_map,
            "j_cochain_map": r.j_cochain_map,
            "j_phi_failures": r.j_phi_failures,
            "allowable": r.allowable.iter().map(|(n, ok)| json!({"perversity": n, "ok": ok})).collect::<Vec<_>>(),
        })
    });
    let levels = tower(k, ps, 1, Coefficients::Integers).map_err(CliError::compute)?;
    let len = k.dim().map_or(0, |d| d + 2);
    let invariance = Record::new(
        "subdivision-invariance",
        "H and blown-up cohomology agree on K and sd K, and sd K is full",
        None,
        tower_is_stable(&levels),
        || {
            Value::from(
                levels
                    .iter()
                    .map(|l| {
                        json!({
                            "level": l.level,
                            "full": l.full,
                            "invariants": l.invariants.iter().map(|(n, h, b)| json!({
                                "perversity": n, "homology": groups(h, len), "blown_up": groups(b, len),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            )
        },
    );
    Ok(vec![maps, invariance])
}

fn cup(k: &FilteredComplex) -> Result<Vec<Record>, CliError> {
    let ordered = check_laws(&OrderedCochains::filtered(k));
    let simplicial = Record::new(
        "cup-simplicial",
        "d^2 = 0, Leibniz, associativity and unit for the ordered cup",
        None,
        ordered.is_ok(),
        || json!({"violation": format!("{:?}", ordered.clone().unwrap_err())}),
    );
    let bc = BlowupComplex::new(k).map_err(CliError::compute)?;
    let blowup = if bc.len() > BLOWUP_CUP_LIMIT {
        Record::skip(
            "cup-blowup",
            "d^2 = 0, Leibniz, associativity and unit for the blown-up cup",
            json!({"classes": bc.len(), "limit": BLOWUP_CUP_LIMIT}),
        )
    } else {
        let laws = check_laws(&BlowupAlgebra::new(&bc));
        Record::new(
            "cup-blowup",
            "d^2 = 0, Leibniz, associativity and unit for the blown-up cup",
            None,
            laws.is_ok(),
            || json!({"violation": format!("{:?}", laws.clone().unwrap_err())}),
        )
    };
    Ok(vec![simplicial, blowup])
}

fn pistar(k: &FilteredComplex) -> Result<Vec<Record>, CliError> {
    let sizes: BTreeSet<Vec<usize>> = (0..k.len())
        .map(|i| DecomposedSimplex::of_simplex(k, i))
        .filter(DecomposedSimplex::is_regular)
        .map(|d| d.parts.iter().map(Vec::len).collect())
        .collect();
    let mut bad = None;
    for s in &sizes {
        let delta = DecomposedSimplex::from_sizes(s).map_err(CliError::compute)?;
        let r = LocalPiStar::new(&delta).map_err(CliError::compute)?.check();
        if !r.passed() {
            bad = Some(json!({
                "sizes": r.sizes,
                "cochain_map": r.cochain_map,
                "cup_preserving": r.cup_preserving,
                "degree": r.degrees.iter().find(|d| !d.unimodular()).map(|d| d.degree),
            }));
            break;
        }
    }
    let local_ok = bad.is_none();
    let local = Record::new(
        "pistar-local",
        "local pi* is a cup-preserving cochain isomorphism onto the 0-allowable blow-up",
        None,
        local_ok,
        || bad.expect("a failure witness"),
    );
    let bc = BlowupComplex::new(k).map_err(CliError::compute)?;
    let g = GlobalPiStar::new(&bc);
    let (map, cupped) = (g.is_cochain_map(), g.preserves_cup());
    let global = Record::new("pistar-global", "global pi* is a cup-preserving cochain map", None, map && cupped, || {
        json!({"cochain_map": map, "cup_preserving": cupped})
    });
    Ok(vec![local, global])
}
