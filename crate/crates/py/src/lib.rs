//! Python bindings: load a problem, solve it, inspect the proof.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rzs_core::solver::{MoveOrdering, SearchBudget};
use rzs_core::{
    benson, oracle_solve, parse_problem, Board, Instance, Player, ProblemSpec, RzsError, SolveResult,
    SolverConfig, Status,
};

fn err(e: RzsError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn player(s: &str) -> PyResult<Player> {
    s.parse::<Player>().map_err(|_| PyValueError::new_err(format!("bad player `{s}`")))
}

/// A problem read from SGF or Hex text.
#[pyclass(name = "Problem", frozen)]
struct PyProblem {
    spec: ProblemSpec,
    inst: Instance,
}

/// Outcome of one search.
#[pyclass(name = "Solution", frozen, get_all)]
struct PySolution {
    /// "WIN", "FAIL" or "UNKNOWN".
    status: String,
    nodes: u64,
    tt_hits: u64,
    /// Grid names of the root relevance zone; empty unless won.
    zone: Vec<String>,
    /// Proof file text (header only when there is no tree).
    proof: String,
    tree_size: usize,
}

fn ordering(spec: Option<&str>) -> PyResult<MoveOrdering> {
    Ok(match spec.unwrap_or("lex") {
        "lex" => MoveOrdering::Lexicographic,
        "liberty" => MoveOrdering::LibertyPressure,
        priors => MoveOrdering::parse_priors(priors).map_err(err)?,
    })
}

#[pymethods]
impl PyProblem {
    /// Parses SGF or Hex problem text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyProblem> {
        let spec = parse_problem(text).map_err(err)?;
        let inst = spec.instance(true).map_err(err)?;
        Ok(PyProblem { spec, inst })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<PyProblem> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        PyProblem::parse(&text)
    }

    #[getter]
    fn game(&self) -> &'static str {
        self.spec.game.name()
    }

    #[getter]
    fn size(&self) -> usize {
        self.spec.size
    }

    #[getter]
    fn to_move(&self) -> String {
        self.spec.to_move.to_string()
    }

    fn render(&self) -> String {
        self.inst.board().render(None)
    }

    /// `ordering` is "lex", "liberty", or a whitespace-separated list of
    /// moves to try first.
    #[pyo3(signature = (rzs = true, max_nodes = 1_000_000, max_depth = 64, ordering = None))]
    fn solve(&self, rzs: bool, max_nodes: u64, max_depth: u32, ordering: Option<&str>) -> PyResult<PySolution> {
        let cfg = SolverConfig {
            budget: SearchBudget {
                max_nodes,
                max_depth,
                deadline: None,
            },
            ordering: self::ordering(ordering)?,
            rzs,
            ..SolverConfig::default()
        };
        let res: SolveResult = self.inst.solve(&cfg);
        Ok(PySolution {
            status: res.status.to_string(),
            nodes: res.stats.nodes,
            tt_hits: res.stats.tt_hits,
            zone: res.rz.map(|z| z.grids().map(|g| g.to_string()).collect()).unwrap_or_default(),
            proof: self.inst.proof_text(&cfg, &res),
            tree_size: res.tree.as_ref().map_or(0, |t| t.tree_size()),
        })
    }

    /// Full-width minimax verdict within `max_depth` plies.
    fn oracle(&self, max_depth: u32) -> String {
        let s: Status = match &self.inst {
            Instance::Go(r, p) => oracle_solve(r, p, max_depth).status,
            Instance::Hex(r, p) => oracle_solve(r, p, max_depth).status,
        };
        s.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Problem({} {}x{}, {} to move)", self.spec.game.name(), self.spec.size, self.spec.size, self.spec.to_move)
    }
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!("Solution({} nodes={} zone={})", self.status, self.nodes, self.zone.len())
    }
}

/// Blocks of `player` that Benson's test finds unconditionally alive, as
/// lists of grid names. `rows` are board rows from the top, `X`/`O`/`.`.
#[pyfunction]
fn unconditionally_alive(rows: Vec<String>, player: &str) -> PyResult<Vec<Vec<String>>> {
    let b = Board::from_rows(&rows).map_err(err)?;
    let who = self::player(player)?;
    Ok(benson::unconditionally_alive(&b, who)
        .iter()
        .map(|bl| bl.stone_grids(b.size()).iter().map(|g| g.to_string()).collect())
        .collect())
}

#[pymodule]
fn rzs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(unconditionally_alive, m)?)?;
    Ok(())
}
