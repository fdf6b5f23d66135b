//! Exhaustive backtrack search for the maximum number of dots in a DDC of
//! a given class and radius.
//!
//! Every DDC of class-metric diameter at most `r` sits inside a maximal
//! anticode of diameter `r`, so the combinatorial classes search one board
//! per anticode family instead of a bounding box. The Euclidean classes,
//! whose maximal anticodes have no discrete classification, anchor the
//! lexicographically least dot at the origin and search the disk of
//! radius `r` around it; both strategies are complete up to translation
//! (and rotation between symmetric board orientations).
//!
//! Dots are added in lexicographic order with a used-difference table for
//! O(m) feasibility checks; first-dot choices can be restricted to
//! lattice-symmetry orbit representatives of the board.

use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anticodes::{build_anticode, maximal_anticode_types};
use crate::bounds::trivial_upper;
use crate::config::{ConfigRecord, Configuration, DdcClass};
use crate::grid::{apply_symmetry, euclid_sq_vec, lattice_symmetries, pt, GridKind, GridPoint};
use crate::{Error, Result};

/// Search controls. The node budget bounds the number of backtrack
/// extensions per branch; when it is exhausted the search reports its best
/// find with `exact = false`.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub node_budget: u64,
    pub symmetry_reduction: bool,
    /// Progress file for long runs: completed branches are recorded as
    /// they finish and skipped when the same search is restarted.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: 1_000_000_000,
            symmetry_reduction: true,
            checkpoint: None,
        }
    }
}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub version: String,
    pub class: DdcClass,
    pub r: u64,
    pub m_opt: u64,
    pub configuration: ConfigRecord,
    pub nodes: u64,
    pub elapsed_ms: u64,
    /// False when the node budget ran out before the tree was exhausted.
    pub exact: bool,
}

impl SearchResult {
    pub fn configuration(&self) -> Configuration {
        self.configuration.configuration()
    }
}

/// One search board with its difference-table geometry.
struct Board {
    kind: GridKind,
    cells: Vec<GridPoint>,
    /// Admissible first-dot indices (orbit representatives when symmetry
    /// reduction is on).
    first_dots: Vec<usize>,
    /// Squared-Euclidean pairwise limit for the anchored-disk boards;
    /// anticode boards bound the diameter by construction.
    pairwise_limit: Option<u64>,
    span_i: i64,
    span_j: i64,
}

impl Board {
    fn new(
        kind: GridKind,
        mut cells: Vec<GridPoint>,
        pairwise_limit: Option<u64>,
        reps: Option<Vec<usize>>,
    ) -> Board {
        cells.sort_unstable();
        let span_i =
            cells.iter().map(|p| p.i).max().unwrap() - cells.iter().map(|p| p.i).min().unwrap();
        let span_j =
            cells.iter().map(|p| p.j).max().unwrap() - cells.iter().map(|p| p.j).min().unwrap();
        let first_dots = reps.unwrap_or_else(|| (0..cells.len()).collect());
        Board {
            kind,
            cells,
            first_dots,
            pairwise_limit,
            span_i,
            span_j,
        }
    }

    /// Index of the difference vector `e - d` in the used-difference table.
    fn diff_index(&self, d: GridPoint, e: GridPoint) -> usize {
        let w = 2 * self.span_i + 1;
        let di = e.i - d.i + self.span_i;
        let dj = e.j - d.j + self.span_j;
        (dj * w + di) as usize
    }

    fn table_size(&self) -> usize {
        ((2 * self.span_i + 1) * (2 * self.span_j + 1)) as usize
    }
}

/// First-dot orbit representatives: cells that are lexicographically least
/// within their orbit under the board-preserving lattice symmetries.
///
/// Sound because a configuration minimizing the sorted dot list over all
/// symmetric images starts with a dot no symmetry can move lower.
fn orbit_representatives(cells: &[GridPoint], kind: GridKind) -> Vec<usize> {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    let base0 = sorted[0];
    let canonical: Vec<GridPoint> = sorted
        .iter()
        .map(|p| pt(p.i - base0.i, p.j - base0.j))
        .collect();
    let mut autos: Vec<([i64; 4], GridPoint)> = Vec::new();
    for m in lattice_symmetries(kind) {
        let mut image: Vec<GridPoint> = canonical.iter().map(|&p| apply_symmetry(m, p)).collect();
        image.sort_unstable();
        let base = image[0];
        let aligned: Vec<GridPoint> = image
            .iter()
            .map(|p| pt(p.i - base.i, p.j - base.j))
            .collect();
        if aligned == canonical {
            autos.push((m, base));
        }
    }
    let mut reps = Vec::new();
    for (idx, &c) in sorted.iter().enumerate() {
        let c0 = pt(c.i - base0.i, c.j - base0.j);
        let least = autos.iter().all(|&(m, shift)| {
            let img = apply_symmetry(m, c0);
            c0 <= pt(img.i - shift.i, img.j - shift.j)
        });
        if least {
            reps.push(idx);
        }
    }
    reps
}

struct Dfs<'a> {
    board: &'a Board,
    used: Vec<bool>,
    dots: Vec<GridPoint>,
    best_m: usize,
    best_dots: Vec<GridPoint>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    cap: usize,
}

impl<'a> Dfs<'a> {
    fn run(board: &'a Board, first: usize, budget: u64, cap: usize) -> Dfs<'a> {
        let mut dfs = Dfs {
            board,
            used: vec![false; board.table_size()],
            dots: vec![board.cells[first]],
            best_m: 0,
            best_dots: Vec::new(),
            nodes: 0,
            budget,
            exhausted: true,
            cap,
        };
        dfs.extend(first + 1);
        dfs
    }

    /// Registers `p` against the current dots; on rejection the table is
    /// left untouched and `undo` is empty.
    fn try_add(&mut self, p: GridPoint, undo: &mut Vec<usize>) -> bool {
        if let Some(limit) = self.board.pairwise_limit {
            for q in &self.dots {
                if euclid_sq_vec(p.i - q.i, p.j - q.j, self.board.kind) > limit {
                    return false;
                }
            }
        }
        for q in &self.dots {
            let f = self.board.diff_index(*q, p);
            let b = self.board.diff_index(p, *q);
            if self.used[f] || self.used[b] {
                for &u in undo.iter() {
                    self.used[u] = false;
                }
                undo.clear();
                return false;
            }
            self.used[f] = true;
            self.used[b] = true;
            undo.push(f);
            undo.push(b);
        }
        true
    }

    fn extend(&mut self, start: usize) {
        if self.dots.len() > self.best_m {
            self.best_m = self.dots.len();
            self.best_dots = self.dots.clone();
        }
        if self.best_m >= self.cap {
            return;
        }
        let n = self.board.cells.len();
        for k in start..n {
            if self.dots.len() + (n - k) <= self.best_m {
                break; // not enough cells left to improve
            }
            if self.nodes >= self.budget {
                self.exhausted = false;
                return;
            }
            self.nodes += 1;
            let p = self.board.cells[k];
            let mut undo = Vec::new();
            if !self.try_add(p, &mut undo) {
                continue;
            }
            self.dots.push(p);
            self.extend(k + 1);
            self.dots.pop();
            for &u in &undo {
                self.used[u] = false;
            }
            if !self.exhausted {
                return;
            }
        }
    }
}

/// On-disk progress of a checkpointed search. Branches are identified by
/// `(board index, first-dot index)`; a file is only reusable by a run with
/// identical class, radius, budget, and symmetry settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: String,
    pub class: DdcClass,
    pub r: u64,
    pub node_budget: u64,
    pub symmetry_reduction: bool,
    pub completed: Vec<BranchRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchRecord {
    pub board: usize,
    pub first_dot: usize,
    pub best_m: u64,
    pub best_dots: Vec<[i64; 2]>,
    pub nodes: u64,
    pub exhausted: bool,
}

impl Checkpoint {
    fn fresh(class: DdcClass, r: u64, options: &SearchOptions) -> Checkpoint {
        Checkpoint {
            version: crate::REPORT_VERSION.to_string(),
            class,
            r,
            node_budget: options.node_budget,
            symmetry_reduction: options.symmetry_reduction,
            completed: Vec::new(),
        }
    }

    fn matches(&self, class: DdcClass, r: u64, options: &SearchOptions) -> bool {
        self.class == class
            && self.r == r
            && self.node_budget == options.node_budget
            && self.symmetry_reduction == options.symmetry_reduction
    }
}

fn load_checkpoint(
    path: &PathBuf,
    class: DdcClass,
    r: u64,
    options: &SearchOptions,
) -> Result<Checkpoint> {
    if !path.exists() {
        return Ok(Checkpoint::fresh(class, r, options));
    }
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("reading checkpoint: {e}")))?;
    let cp: Checkpoint = serde_json::from_str(&raw)
        .map_err(|e| Error::InvalidParameter(format!("parsing checkpoint: {e}")))?;
    if !cp.matches(class, r, options) {
        return Err(Error::InvalidParameter(
            "checkpoint was written by a different search (class/r/budget/symmetry)".into(),
        ));
    }
    Ok(cp)
}

fn store_checkpoint(path: &PathBuf, cp: &Checkpoint) {
    // progress writes are best-effort; a failed write only costs re-search
    if let Ok(json) = serde_json::to_string(cp) {
        let _ = std::fs::write(path, json);
    }
}

fn boards_for(class: DdcClass, r: u64, options: &SearchOptions) -> Result<Vec<Board>> {
    let kind = class.grid_kind();
    match class {
        DdcClass::DdBar | DdcClass::DdBarStar => maximal_anticode_types(r, kind)
            .iter()
            .map(|spec| {
                let shape = build_anticode(spec)?;
                let reps = options
                    .symmetry_reduction
                    .then(|| orbit_representatives(shape.cells(), kind));
                Ok(Board::new(kind, shape.cells().to_vec(), None, reps))
            })
            .collect(),
        DdcClass::Dd | DdcClass::DdStar => {
            // anchored disk: the lex-least dot of any configuration can be
            // translated to the origin, all others are lex-greater and
            // within squared distance r^2 of it
            let ri = r as i64;
            let r2 = r * r;
            let mut cells = vec![pt(0, 0)];
            for i in 0..=ri {
                for j in -ri..=ri {
                    let p = pt(i, j);
                    if p > pt(0, 0) && euclid_sq_vec(i, j, kind) <= r2 {
                        cells.push(p);
                    }
                }
            }
            Ok(vec![Board::new(kind, cells, Some(r2), Some(vec![0]))])
        }
    }
}

/// Exhaustive maximum-DDC search (see module docs). The optimum is exact
/// whenever `exact` is true; otherwise it is the best found within the
/// node budget. Ties between optimal configurations break to the
/// lexicographically least dot set encountered by the ordered search.
pub fn max_ddc(class: DdcClass, r: u64, options: SearchOptions) -> Result<SearchResult> {
    if r < 1 {
        return Err(Error::InvalidParameter("search needs r >= 1".into()));
    }
    let start = Instant::now();
    let boards = boards_for(class, r, &options)?;
    let cap = trivial_upper(r, class) as usize;

    let mut checkpoint = match &options.checkpoint {
        Some(path) => Some((path.clone(), load_checkpoint(path, class, r, &options)?)),
        None => None,
    };
    let done: std::collections::HashSet<(usize, usize)> = checkpoint
        .as_ref()
        .map(|(_, cp)| {
            cp.completed
                .iter()
                .map(|b| (b.board, b.first_dot))
                .collect()
        })
        .unwrap_or_default();
    let restored: Vec<BranchRecord> = checkpoint
        .as_ref()
        .map(|(_, cp)| cp.completed.clone())
        .unwrap_or_default();

    // branches run independently; the fold is deterministic in branch
    // order regardless of thread scheduling
    let branches: Vec<(usize, usize)> = boards
        .iter()
        .enumerate()
        .flat_map(|(bi, b)| b.first_dots.iter().map(move |&f| (bi, f)))
        .filter(|key| !done.contains(key))
        .collect();
    let runs: Vec<BranchRecord> = {
        let progress: Option<(&PathBuf, Mutex<&mut Checkpoint>)> = checkpoint
            .as_mut()
            .map(|(path, cp)| (&*path, Mutex::new(cp)));
        branches
            .par_iter()
            .map(|&(bi, first)| {
                let dfs = Dfs::run(&boards[bi], first, options.node_budget, cap);
                let record = BranchRecord {
                    board: bi,
                    first_dot: first,
                    best_m: dfs.best_m as u64,
                    best_dots: dfs.best_dots.iter().map(|p| [p.i, p.j]).collect(),
                    nodes: dfs.nodes,
                    exhausted: dfs.exhausted,
                };
                if let Some((path, cp)) = &progress {
                    let mut cp = cp.lock().expect("checkpoint lock");
                    cp.completed.push(record.clone());
                    store_checkpoint(path, &cp);
                }
                record
            })
            .collect()
    };

    // fold restored and fresh branch records identically
    let mut best_m = 0usize;
    let mut best_dots: Vec<GridPoint> = Vec::new();
    let mut nodes = 0u64;
    let mut exact = true;
    for rec in restored.iter().chain(runs.iter()) {
        nodes += rec.nodes;
        exact &= rec.exhausted;
        let dots: Vec<GridPoint> = rec.best_dots.iter().map(|d| pt(d[0], d[1])).collect();
        let m = rec.best_m as usize;
        if m > best_m || (m == best_m && !dots.is_empty() && dots < best_dots) {
            best_m = m;
            best_dots = dots;
        }
    }
    let config = Configuration::new(class.grid_kind(), best_dots);
    debug_assert!(config.is_ddc_class(class, r)?);
    Ok(SearchResult {
        version: crate::REPORT_VERSION.to_string(),
        class,
        r,
        m_opt: best_m as u64,
        configuration: ConfigRecord::new(&config, class.metric(), r),
        nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        exact,
    })
}

/// Runs the Manhattan search over a radius range and returns `r -> m_opt`.
pub fn verify_optimal_table(r_lo: u64, r_hi: u64) -> Result<Vec<(u64, u64)>> {
    (r_lo..=r_hi)
        .map(|r| max_ddc(DdcClass::DdBar, r, SearchOptions::default()).map(|res| (r, res.m_opt)))
        .collect()
}

/// The published optimal Manhattan dot counts: `m = 3, 4` for `r = 2, 3`
/// and `m = r + 2` for `4 <= r <= 11`.
pub fn expected_manhattan_optimum(r: u64) -> Option<u64> {
    match r {
        2 => Some(3),
        3 => Some(4),
        4..=11 => Some(r + 2),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opt(class: DdcClass, r: u64) -> u64 {
        max_ddc(class, r, SearchOptions::default()).unwrap().m_opt
    }

    #[test]
    fn manhattan_small() {
        assert_eq!(opt(DdcClass::DdBar, 2), 3);
        assert_eq!(opt(DdcClass::DdBar, 3), 4);
        assert_eq!(opt(DdcClass::DdBar, 4), 6);
        assert_eq!(opt(DdcClass::DdBar, 5), 7);
    }

    #[test]
    fn hexagonal_small() {
        assert_eq!(opt(DdcClass::DdBarStar, 2), 4);
        assert_eq!(opt(DdcClass::DdBarStar, 3), 6);
    }

    #[test]
    fn euclidean_small() {
        let res = max_ddc(DdcClass::Dd, 2, SearchOptions::default()).unwrap();
        assert!(res.exact);
        assert!(res.configuration().is_ddc_class(DdcClass::Dd, 2).unwrap());
        assert!(res.m_opt >= 3);
        let hex = max_ddc(DdcClass::DdStar, 2, SearchOptions::default()).unwrap();
        assert!(hex.exact);
        assert!(hex.m_opt >= 4);
        assert!(hex
            .configuration()
            .is_ddc_class(DdcClass::DdStar, 2)
            .unwrap());
    }

    #[test]
    fn symmetry_reduction_invariant() {
        for r in 2..=5u64 {
            let with = max_ddc(
                DdcClass::DdBar,
                r,
                SearchOptions {
                    symmetry_reduction: true,
                    ..Default::default()
                },
            )
            .unwrap();
            let without = max_ddc(
                DdcClass::DdBar,
                r,
                SearchOptions {
                    symmetry_reduction: false,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(with.m_opt, without.m_opt, "r={r}");
            assert!(with.exact && without.exact);
        }
    }

    #[test]
    fn results_verify_and_are_deterministic() {
        let a = max_ddc(DdcClass::DdBar, 4, SearchOptions::default()).unwrap();
        let b = max_ddc(DdcClass::DdBar, 4, SearchOptions::default()).unwrap();
        assert_eq!(a.configuration, b.configuration);
        assert_eq!(a.nodes, b.nodes);
        assert!(a.configuration().is_ddc_class(DdcClass::DdBar, 4).unwrap());
    }

    #[test]
    fn optimal_table_helper() {
        let table = verify_optimal_table(2, 4).unwrap();
        assert_eq!(table, vec![(2, 3), (3, 4), (4, 6)]);
        for (r, m) in table {
            assert_eq!(Some(m), expected_manhattan_optimum(r));
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let res = max_ddc(
            DdcClass::DdBar,
            6,
            SearchOptions {
                node_budget: 50,
                symmetry_reduction: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!res.exact);
        assert!(res.m_opt >= 1);
    }

    #[test]
    fn checkpoint_resume_round_trip() {
        let path =
            std::env::temp_dir().join(format!("ddc-checkpoint-test-{}.json", std::process::id()));
        let _ = std::fs::remove_file(&path);
        let opts = SearchOptions {
            checkpoint: Some(path.clone()),
            ..Default::default()
        };
        let first = max_ddc(DdcClass::DdBar, 4, opts.clone()).unwrap();
        assert!(path.exists());
        // a restart restores every branch and reproduces the result
        let second = max_ddc(DdcClass::DdBar, 4, opts).unwrap();
        assert_eq!(first.m_opt, second.m_opt);
        assert_eq!(first.configuration, second.configuration);
        assert_eq!(first.nodes, second.nodes);
        // and matches an uncheckpointed run
        let plain = max_ddc(DdcClass::DdBar, 4, SearchOptions::default()).unwrap();
        assert_eq!(plain.configuration, first.configuration);
        // incompatible settings are rejected
        let clash = SearchOptions {
            node_budget: 7,
            checkpoint: Some(path.clone()),
            ..Default::default()
        };
        assert!(max_ddc(DdcClass::DdBar, 4, clash).is_err());
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn search_below_bounds() {
        for r in 2..=5u64 {
            let m = opt(DdcClass::DdBar, r);
            assert!(m <= trivial_upper(r, DdcClass::DdBar));
            let et = crate::bounds::erdos_turan_upper(r, DdcClass::DdBar).unwrap();
            assert!(m <= et.m_max);
        }
    }
}
