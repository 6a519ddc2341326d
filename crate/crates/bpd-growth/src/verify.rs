//! Verification harness: deterministic suites sweeping enumerated
//! universes of biwords and grids.
//!
//! Every suite expands to a list of self-contained case strings
//! (`key=value` pairs separated by `;`), each runnable on its own via
//! [`run_case`]. Reports render deterministically for a given set of
//! options; wall time is kept out of the rendered text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biword::{enumerate_plactic, knuth_connected, Biword};
use crate::bpd::{Grid, Tile};
use crate::error::{Error, Result};
use crate::growth::{growth_by_insertion, growth_by_rules, PipeDream};
use crate::insertion::{insert, InsertionPath};
use crate::jdt::{jdt_step, rect, reversed_jdt};
use crate::perm::Permutation;

/// Suite names accepted by [`run_suite`], besides the umbrella `all`.
pub const SUITES: &[&str] = &[
    "golden",
    "growth-equivalence",
    "rect-strip",
    "knuth",
    "commute",
    "roundtrip",
    "structural",
    "paths",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_k: usize,
    pub max_len: usize,
    pub seed: u64,
    pub random_cases: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_k: 3,
            max_len: 4,
            seed: 0,
            random_cases: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub suite: String,
    pub input: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_k: usize,
    pub max_len: usize,
    pub seed: u64,
    pub random_cases: usize,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Deterministic text report (no timing data).
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "suite: {}", self.suite).unwrap();
        writeln!(
            s,
            "bounds: max_k={} max_len={} seed={} random_cases={}",
            self.max_k, self.max_len, self.seed, self.random_cases
        )
        .unwrap();
        writeln!(s, "cases: {}", self.cases).unwrap();
        for f in &self.failures {
            writeln!(s, "FAIL [{}] {} :: {}", f.suite, f.input, f.message).unwrap();
        }
        writeln!(s, "failures: {}", self.failures.len()).unwrap();
        write!(
            s,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
        s
    }
}

/// Runs one suite (or `all`) and collects failures without stopping.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<VerifyReport> {
    let t0 = Instant::now();
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::Parse(format!(
            "unknown suite '{name}' (expected one of: all, {})",
            SUITES.join(", ")
        )));
    };
    let mut cases = 0;
    let mut failures = Vec::new();
    for suite in names {
        for input in generate_inputs(suite, opts)? {
            cases += 1;
            if let Err(e) = run_case(&input) {
                failures.push(Failure {
                    suite: suite.to_string(),
                    input,
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(VerifyReport {
        suite: name.to_string(),
        max_k: opts.max_k,
        max_len: opts.max_len,
        seed: opts.seed,
        random_cases: opts.random_cases,
        cases,
        failures,
        wall_ms: t0.elapsed().as_millis(),
    })
}

/// Runs a single self-contained case string, as listed in failure
/// reports and replay files.
pub fn run_case(input: &str) -> Result<()> {
    let kv = parse_input(input)?;
    let suite = kv
        .get("suite")
        .ok_or_else(|| Error::Parse("case input lacks a suite= field".into()))?
        .clone();
    match suite.as_str() {
        "golden" => run_golden_case(req(&kv, "case")?),
        "growth-equivalence" => check_growth_equivalence(&biword_arg(&kv)?),
        "rect-strip" => check_rect_strip(&biword_arg(&kv)?),
        "knuth" => {
            if kv.get("case").map(String::as_str) == Some("remark") {
                check_knuth_remark()
            } else {
                check_knuth_fiber(
                    &biword_arg(&kv)?,
                    usize_arg(&kv, "max_k")?,
                    usize_arg(&kv, "max_len")?,
                )
            }
        }
        "commute" => check_commute(&grid_arg(&kv)?, usize_arg(&kv, "b")?, usize_arg(&kv, "k")?),
        "roundtrip" => check_roundtrip(&grid_arg(&kv)?),
        "structural" => {
            if kv.contains_key("q") {
                check_structural_biword(&biword_arg(&kv)?)
            } else {
                check_structural_grid(&grid_arg(&kv)?)
            }
        }
        "paths" => check_paths(&grid_arg(&kv)?, usize_arg(&kv, "b")?, usize_arg(&kv, "k")?),
        other => Err(Error::Parse(format!("unknown case suite '{other}'"))),
    }
}

fn parse_input(input: &str) -> Result<BTreeMap<String, String>> {
    let mut kv = BTreeMap::new();
    for part in input.trim().split(';') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("case field '{part}' is not key=value")))?;
        kv.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(kv)
}

fn req<'a>(kv: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    kv.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Parse(format!("case input lacks a {key}= field")))
}

fn biword_arg(kv: &BTreeMap<String, String>) -> Result<Biword> {
    Biword::parse(req(kv, "q")?)
}

fn grid_arg(kv: &BTreeMap<String, String>) -> Result<Grid> {
    let rows: Vec<&str> = req(kv, "d")?.split(',').collect();
    Grid::from_rows(&rows)
}

fn usize_arg(kv: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    req(kv, key)?
        .parse()
        .map_err(|_| Error::Parse(format!("case field {key}= is not a number")))
}

fn grid_to_input(g: &Grid) -> String {
    g.render().replace('\n', ",")
}

fn canonical_key(g: &Grid) -> String {
    grid_to_input(&g.canonical())
}

fn breach(msg: impl Into<String>) -> Error {
    Error::InvariantBreach(msg.into())
}

// ---------------------------------------------------------------------
// Universe construction
// ---------------------------------------------------------------------

fn biword_universe(opts: &VerifyOptions) -> Vec<Biword> {
    enumerate_plactic(opts.max_k, opts.max_len)
}

/// All images of enumerated biwords plus every slide iterate, deduplicated
/// up to trailing identity rows and columns.
fn grid_universe(opts: &VerifyOptions) -> Result<Vec<Grid>> {
    let mut seen = BTreeSet::new();
    let mut grids: Vec<Grid> = Vec::new();
    for q in biword_universe(opts) {
        let d = q.phi()?;
        if seen.insert(canonical_key(&d)) {
            grids.push(d);
        }
    }
    let mut idx = 0;
    while idx < grids.len() {
        if grids[idx].first_blank_row().is_some() {
            let next = jdt_step(&grids[idx])?.grid;
            if seen.insert(canonical_key(&next)) {
                grids.push(next);
            }
        }
        idx += 1;
    }
    Ok(grids)
}

fn row_has_start(d: &Grid, b: usize) -> bool {
    b >= 1 && b <= d.size() && (1..=d.size()).any(|j| d.get((b, j)) == Tile::LowerElbow)
}

fn random_biword(rng: &mut ChaCha8Rng, max_k: usize, max_len: usize) -> Biword {
    let len = rng.gen_range(1..=max_len);
    let mut cap = max_k;
    let mut rows = Vec::with_capacity(len);
    let mut subs = Vec::with_capacity(len);
    for _ in 0..len {
        let kk = rng.gen_range(1..=cap);
        cap = kk;
        rows.push(rng.gen_range(1..=kk));
        subs.push(kk);
    }
    Biword::new(rows, subs).expect("random biword respects the column conditions")
}

fn generate_inputs(suite: &str, opts: &VerifyOptions) -> Result<Vec<String>> {
    let mut v = Vec::new();
    match suite {
        "golden" => {
            for case in [
                "matrix",
                "chain",
                "insert-chain",
                "jdt",
                "rect",
                "rjdt",
                "render",
                "enumeration",
            ] {
                v.push(format!("suite=golden;case={case}"));
            }
        }
        "growth-equivalence" => {
            for q in biword_universe(opts) {
                v.push(format!("suite=growth-equivalence;q={q}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.random_cases {
                let q = random_biword(&mut rng, opts.max_k + 1, opts.max_len + 2);
                v.push(format!("suite=growth-equivalence;q={q}"));
            }
        }
        "rect-strip" => {
            for q in biword_universe(opts) {
                v.push(format!("suite=rect-strip;q={q}"));
            }
        }
        "knuth" => {
            v.push("suite=knuth;case=remark".into());
            let mut reps: BTreeMap<String, Biword> = BTreeMap::new();
            for q in biword_universe(opts) {
                reps.entry(canonical_key(&q.phi()?)).or_insert(q);
            }
            for q in reps.values() {
                v.push(format!(
                    "suite=knuth;q={q};max_k={};max_len={}",
                    opts.max_k, opts.max_len
                ));
            }
        }
        "commute" | "paths" => {
            for d in grid_universe(opts)? {
                if d.first_blank_row().is_none() {
                    continue;
                }
                let c = jdt_step(&d)?.pop.1;
                let Some(fd) = d.permutation()?.first_descent() else {
                    continue;
                };
                for b in c..=fd {
                    if !row_has_start(&d, b) {
                        continue;
                    }
                    for k in b..=fd {
                        v.push(format!("suite={suite};d={};b={b};k={k}", grid_to_input(&d)));
                    }
                }
            }
        }
        "roundtrip" => {
            for d in grid_universe(opts)? {
                if d.first_blank_row().is_some() {
                    v.push(format!("suite=roundtrip;d={}", grid_to_input(&d)));
                }
            }
        }
        "structural" => {
            for q in biword_universe(opts) {
                v.push(format!("suite=structural;q={q}"));
            }
            for d in grid_universe(opts)? {
                v.push(format!("suite=structural;d={}", grid_to_input(&d)));
            }
        }
        other => return Err(Error::Parse(format!("unknown suite '{other}'"))),
    }
    Ok(v)
}

// ---------------------------------------------------------------------
// Fixed fixtures
// ---------------------------------------------------------------------

const GOLDEN_BIWORD: &str = "1,3,1,2,1/3,3,2,2,1";

const GOLDEN_IMAGE: [&str; 6] = [
    "...r--",
    ".r-jr-",
    ".|r-+-",
    "r++-+-",
    "|||r+-",
    "|||||r",
];

const GOLDEN_IMAGE_SLID: [&str; 6] = [
    "..r---",
    ".rjr--",
    ".|r+--",
    "r+++--",
    "||||r-",
    "|||||r",
];

const GOLDEN_IMAGE_RECT: [&str; 6] = [
    "r-----",
    "|.r---",
    "|.|r--",
    "|r++--",
    "||||r-",
    "|||||r",
];

const GOLDEN_MATRIX: [[&str; 6]; 4] = [
    ["1", "1", "1", "1", "1", "1"],
    ["1", "1", "12435", "12435", "12435", "12435"],
    ["1", "1", "12435", "12435", "13425", "13425"],
    ["1", "12435", "12534", "13524", "15324", "25314"],
];

const GOLDEN_RENDER: &str = "\
12345  12345  12345  12345  12345  12345
            x3
12345  12345  12435  12435  12435  12435
                          x2
12345  12345  12435  12435  13425  13425
     x3            x2            x1
12345  12435  12534  13524  15324  25314";

fn golden_biword() -> Biword {
    Biword::parse(GOLDEN_BIWORD).expect("fixture biword parses")
}

fn fixture_grid(rows: &[&str]) -> Grid {
    Grid::from_rows(rows).expect("fixture grid parses")
}

fn run_golden_case(case: &str) -> Result<()> {
    match case {
        "matrix" => {
            let by_rules = growth_by_rules(&golden_biword())?;
            let by_insertion = growth_by_insertion(&golden_biword())?;
            if by_rules != by_insertion {
                return Err(breach("the two growth constructions disagree"));
            }
            for (row, want_row) in (0..=3).rev().zip(GOLDEN_MATRIX.iter()) {
                for (j, want) in want_row.iter().enumerate() {
                    if by_rules.cell(row, j) != &Permutation::parse(want)? {
                        return Err(breach(format!(
                            "matrix entry at threshold {row}, column {j} is {}, want {want}",
                            by_rules.cell(row, j)
                        )));
                    }
                }
            }
            by_rules.audit()
        }
        "chain" => {
            let d = growth_by_rules(&golden_biword())?;
            let chain: Vec<String> = d.rightmost_chain().iter().map(|p| p.to_string()).collect();
            if chain != ["1", "1243", "1342", "25314"] {
                return Err(breach(format!("rightmost chain is {chain:?}")));
            }
            let cs = d.compatible_sequence()?;
            if cs.a_seq != [4, 3, 1, 2, 3] || cs.r_seq != [1, 1, 1, 2, 3] {
                return Err(breach(format!(
                    "compatible sequence is {:?}/{:?}",
                    cs.a_seq, cs.r_seq
                )));
            }
            let pd = PipeDream::from_compatible(&cs);
            let want: BTreeSet<(usize, usize)> =
                [(1, 1), (1, 3), (1, 4), (2, 1), (3, 1)].into_iter().collect();
            if pd.m != 5 || pd.crosses != want {
                return Err(breach(format!("pipe dream is m={} {:?}", pd.m, pd.crosses)));
            }
            if pd.permutation()? != Permutation::parse("25314")? {
                return Err(breach("pipe dream wires trace the wrong permutation"));
            }
            Ok(())
        }
        "insert-chain" => {
            let q = golden_biword();
            let want = ["12435", "12534", "13524", "15324", "25314"];
            let mut g = Grid::rothe(&Permutation::identity(), q.max_k() + q.len() + 1)?;
            for ((aj, kj), want_perm) in q.letters().zip(want.iter()) {
                g = insert(&g, aj, kj)?.grid;
                if g.permutation()? != Permutation::parse(want_perm)? {
                    return Err(breach(format!(
                        "chain permutation after inserting ({aj},{kj}) is {}, want {want_perm}",
                        g.permutation()?
                    )));
                }
            }
            if !g.canonical_eq(&fixture_grid(&GOLDEN_IMAGE)) {
                return Err(breach("chain image differs from the fixture grid"));
            }
            Ok(())
        }
        "jdt" => {
            let d = fixture_grid(&GOLDEN_IMAGE);
            let out = jdt_step(&d)?;
            if out.pop != (4, 1) {
                return Err(breach(format!("slide popped {:?}", out.pop)));
            }
            if out.path != [(1, 3), (2, 4)] {
                return Err(breach(format!("slide path is {:?}", out.path)));
            }
            if out.grid.render() != fixture_grid(&GOLDEN_IMAGE_SLID).render() {
                return Err(breach("slide produced an unexpected grid"));
            }
            Ok(())
        }
        "rect" => {
            let d = fixture_grid(&GOLDEN_IMAGE);
            let out = rect(&d)?;
            if out.i_set != [4, 3, 1] {
                return Err(breach(format!("rectification word is {:?}", out.i_set)));
            }
            if out.pops != [(4, 1), (3, 1), (1, 1)] {
                return Err(breach(format!("rectification pops are {:?}", out.pops)));
            }
            if out.grid.render() != fixture_grid(&GOLDEN_IMAGE_RECT).render() {
                return Err(breach("rectification produced an unexpected grid"));
            }
            Ok(())
        }
        "rjdt" => {
            let d = fixture_grid(&GOLDEN_IMAGE_SLID);
            let out = reversed_jdt(&d, 1, 4)?;
            if out.grid.render() != fixture_grid(&GOLDEN_IMAGE).render() {
                return Err(breach("reverse slide produced an unexpected grid"));
            }
            if out.path != [(2, 4), (1, 3)] {
                return Err(breach(format!("reverse slide path is {:?}", out.path)));
            }
            Ok(())
        }
        "render" => {
            let d = growth_by_rules(&golden_biword())?;
            if d.render_ascii() != GOLDEN_RENDER {
                return Err(breach("text rendering differs from the fixture"));
            }
            let v = d.to_json()?;
            if v["cells"][3][5] != "25314" || v["chain"][3] != "25314" {
                return Err(breach("JSON rendering differs from the fixture"));
            }
            Ok(())
        }
        "enumeration" => {
            for (max_k, max_len, want) in
                [(1, 1, 1), (2, 2, 10), (3, 4, 422), (4, 6, 44001)]
            {
                let got = enumerate_plactic(max_k, max_len).len();
                if got != want {
                    return Err(breach(format!(
                        "enumeration at ({max_k},{max_len}) has {got} words, want {want}"
                    )));
                }
            }
            Ok(())
        }
        other => Err(Error::Parse(format!("unknown golden case '{other}'"))),
    }
}

// ---------------------------------------------------------------------
// Suite checks
// ---------------------------------------------------------------------

fn check_growth_equivalence(q: &Biword) -> Result<()> {
    let by_rules = growth_by_rules(q)?;
    let by_insertion = growth_by_insertion(q)?;
    if by_rules != by_insertion {
        return Err(breach("the two growth constructions disagree"));
    }
    by_rules.audit()?;
    let cs = by_rules.compatible_sequence()?;
    let pd = PipeDream::from_compatible(&cs);
    if pd.permutation()? != *by_rules.cell(0, by_rules.ell()) {
        return Err(breach("pipe dream wires miss the bottom permutation"));
    }
    Ok(())
}

fn check_rect_strip(q: &Biword) -> Result<()> {
    if q.is_empty() {
        return Ok(());
    }
    let d = q.phi()?;
    let out = rect(&d)?;
    let min_row = *q.rows().iter().min().expect("nonempty biword");
    let want = q.restrict_gt(min_row).phi()?;
    if !out.grid.canonical_eq(&want) {
        return Err(breach(
            "rectification differs from the image of the restricted biword",
        ));
    }
    let popped: Vec<usize> = out.pops.iter().map(|p| p.0).collect();
    if popped != out.i_set {
        return Err(breach(format!(
            "popped values {popped:?} differ from the rectification word {:?}",
            out.i_set
        )));
    }
    if !popped.windows(2).all(|w| w[0] > w[1]) {
        return Err(breach(format!(
            "popped values {popped:?} are not strictly decreasing"
        )));
    }
    Ok(())
}

fn check_knuth_remark() -> Result<()> {
    let cases = [
        ("1,2/3,3", "1,2/3,2", false),
        ("1,3,2/3,3,3", "1,3,2/3,3,2", true),
        ("2,1,2/3,3,3", "2,2,1/3,3,3", true),
    ];
    for (left, right, want) in cases {
        let q1 = Biword::parse(left)?;
        let q2 = Biword::parse(right)?;
        let connected = knuth_connected(&q1, &q2, 500_000)?;
        if connected != want {
            return Err(breach(format!(
                "{left} and {right} should be {}connected",
                if want { "" } else { "dis" }
            )));
        }
        let images_match = q1.phi()?.canonical_eq(&q2.phi()?);
        if images_match != want {
            return Err(breach(format!(
                "{left} and {right} should have {} images",
                if want { "equal" } else { "different" }
            )));
        }
    }
    Ok(())
}

fn check_knuth_fiber(q: &Biword, max_k: usize, max_len: usize) -> Result<()> {
    let d = q.phi()?;
    let key = canonical_key(&d);
    let cap = q.max_k().max(d.permutation()?.degree()) + 1;
    let class = q.knuth_class(cap, 500_000)?;
    for member in &class {
        if canonical_key(&member.phi()?) != key {
            return Err(breach(format!(
                "class member {member} has a different image"
            )));
        }
    }
    let mut sorted_rows: Vec<usize> = q.rows().to_vec();
    sorted_rows.sort_unstable();
    for other in enumerate_plactic(max_k, max_len) {
        if other.len() != q.len() {
            continue;
        }
        let mut other_rows: Vec<usize> = other.rows().to_vec();
        other_rows.sort_unstable();
        if other_rows != sorted_rows {
            continue;
        }
        if canonical_key(&other.phi()?) == key && !class.contains(&other) {
            return Err(breach(format!(
                "{other} shares the image but is outside the rewriting class"
            )));
        }
    }
    for (nb, mv) in q.knuth_neighbors() {
        for i in 0..q.max_a().max(nb.max_a()) {
            let left = q.restrict_gt(i).phi()?;
            let right = nb.restrict_gt(i).phi()?;
            if !left.canonical_eq(&right) {
                return Err(breach(format!(
                    "{mv} changes the restricted image above {i}"
                )));
            }
        }
    }
    Ok(())
}

fn check_commute(d: &Grid, b: usize, k: usize) -> Result<()> {
    let lhs = jdt_step(&insert(d, b, k)?.grid)?;
    let rhs = insert(&jdt_step(d)?.grid, b, k)?;
    if !lhs.grid.canonical_eq(&rhs.grid) {
        return Err(breach("slide after insertion differs from insertion after slide"));
    }
    Ok(())
}

fn check_roundtrip(d: &Grid) -> Result<()> {
    let fwd = jdt_step(d)?;
    let back = reversed_jdt(&fwd.grid, fwd.pop.1, fwd.pop.0)?;
    if back.grid.render() != d.render() {
        return Err(breach("reverse slide does not restore the grid"));
    }
    let mut rev = fwd.path.clone();
    rev.reverse();
    if back.path != rev {
        return Err(breach(format!(
            "reverse path {:?} is not the reversed forward path {:?}",
            back.path, fwd.path
        )));
    }
    Ok(())
}

fn check_structural_biword(q: &Biword) -> Result<()> {
    let n = (q.max_k() + q.len() + 1).max(1);
    let mut g = Grid::rothe(&Permutation::identity(), n)?;
    let mut steps = 0usize;
    for (aj, kj) in q.letters() {
        let out = insert(&g, aj, kj)?;
        out.grid.validate_strict()?;
        check_consecutive_pipes(&out.path)?;
        steps += 1;
        if out.grid.permutation()?.length() != steps {
            return Err(breach(format!(
                "length is not {steps} after {steps} insertions"
            )));
        }
        g = out.grid;
    }
    let diagram = growth_by_rules(q)?;
    diagram.audit()?;
    let cs = diagram.compatible_sequence()?;
    let pd = PipeDream::from_compatible(&cs);
    if pd.permutation()? != *diagram.cell(0, diagram.ell()) {
        return Err(breach("pipe dream wires miss the bottom permutation"));
    }
    Ok(())
}

fn check_structural_grid(d: &Grid) -> Result<()> {
    d.validate_strict()?;
    let p = d.permutation()?;
    if d.first_blank_row().is_some() {
        let out = jdt_step(d)?;
        out.grid.validate_strict()?;
        let q = out.grid.permutation()?;
        if q != p.left_mul_simple(out.pop.0) {
            return Err(breach(
                "slide output is not the simple-reflection image of the input",
            ));
        }
        if q.length() + 1 != p.length() {
            return Err(breach("slide did not shorten the permutation by one"));
        }
    }
    Ok(())
}

/// Once a max-droop starts at the corner of pipe `p` lying in column `p`,
/// the pipe runs straight up its own column, so the insertion has entered
/// a staircase: every later max-droop moves the same pipe again (after an
/// exchange with an existing crossing pulls the corner back into column
/// `p`) or steps to the next pipe over, and the terminal crossing joins
/// two adjacent pipes at the top of the climb.
fn check_consecutive_pipes(path: &InsertionPath) -> Result<()> {
    for (idx, md) in path.max_droops.iter().enumerate() {
        if md.start.1 != md.pipe {
            continue;
        }
        let mut cur = md.pipe;
        for (s, later) in path.max_droops[idx + 1..].iter().enumerate() {
            if later.pipe != cur && later.pipe != cur + 1 {
                return Err(breach(format!(
                    "droop {} after the column-{} start moves pipe {}, want {} or {}",
                    idx + s + 2,
                    md.pipe,
                    later.pipe,
                    cur,
                    cur + 1
                )));
            }
            cur = later.pipe;
        }
        if path.crossed_pair != (cur, cur + 1) {
            return Err(breach(format!(
                "crossing {:?} after the column-{} start, want ({},{})",
                path.crossed_pair,
                md.pipe,
                cur,
                cur + 1
            )));
        }
    }
    Ok(())
}

#[derive(Debug)]
enum ExpectedPipes {
    Exact(BTreeSet<usize>),
    PrefixThenRun {
        prefix: BTreeSet<usize>,
        run_start: usize,
    },
}

impl ExpectedPipes {
    fn matches(&self, actual: &BTreeSet<usize>) -> bool {
        match self {
            ExpectedPipes::Exact(s) => s == actual,
            ExpectedPipes::PrefixThenRun { prefix, run_start } => {
                if !prefix.is_subset(actual) {
                    return false;
                }
                let rest: Vec<usize> = actual.difference(prefix).copied().collect();
                !rest.is_empty()
                    && rest[0] == *run_start
                    && rest.windows(2).all(|w| w[1] == w[0] + 1)
            }
        }
    }
}

/// Predicts the pipes of the pre-slide insertion from the pipes `p` of
/// the post-slide insertion and the popped value `i`.
fn predict_pipes(p: &[usize], i: usize) -> ExpectedPipes {
    let ell = p.len();
    match p.iter().position(|&v| v == i) {
        Some(j) if j + 1 == ell => {
            let mut s: BTreeSet<usize> = p[..ell - 1].iter().copied().collect();
            s.insert(p[ell - 1] + 1);
            ExpectedPipes::Exact(s)
        }
        Some(j) if j + 2 == ell && p[j + 1] == i + 1 => ExpectedPipes::PrefixThenRun {
            prefix: p[..ell - 2].iter().copied().collect(),
            run_start: p[ell - 1],
        },
        Some(j) if p[j + 1] != i + 1 => {
            let mut s: BTreeSet<usize> = p.iter().copied().collect();
            s.remove(&i);
            s.insert(i + 1);
            ExpectedPipes::Exact(s)
        }
        _ => ExpectedPipes::Exact(p.iter().copied().collect()),
    }
}

fn check_paths(d: &Grid, b: usize, k: usize) -> Result<()> {
    let out_before = insert(d, b, k)?;
    check_consecutive_pipes(&out_before.path)?;
    let fwd = jdt_step(d)?;
    let (i, c) = fwd.pop;
    if b < c {
        return Ok(());
    }
    let out_after = insert(&fwd.grid, b, k)?;
    check_consecutive_pipes(&out_after.path)?;
    let slid: Vec<usize> = out_after.path.goes_through().into_iter().collect();
    let actual = out_before.path.goes_through();
    let expected = predict_pipes(&slid, i);
    if !expected.matches(&actual) {
        return Err(breach(format!(
            "pipe sets break the slide law: popped {i}, slid insertion {slid:?}, predicted {expected:?}, saw {actual:?}"
        )));
    }
    Ok(())
}
