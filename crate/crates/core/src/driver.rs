//! Runs typed jobs against a parsed document and collects reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cder::{explore_derivations, solve_derivations, DerivationSpace};
use crate::cmod::{check_module, classify_rank1, virasoro_actions, Rank1Action};
use crate::coeff::build_window;
use crate::cohom::{explore_cocycles, solve_cocycles, CocycleSolution};
use crate::dsl::AlgebraDoc;
use crate::gdb::GdBialgebra;
use crate::lca::{check_axioms, solve_parameter_constraints, LcaError, LcaPresentation};
use crate::linalg::format_assignment;
use crate::poly::{format_rat, Assignment};
use crate::report::{VerifyReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error(transparent)]
    Lca(#[from] LcaError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Check,
    H2 { deg: u32, explore: bool },
    Cder { deg_l: u32, deg_d: u32, explore: bool },
    Coeff { window: i64, dump: bool },
    Modules { deg: u32 },
    Gd,
    Solve { unknowns: Vec<String> },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Check => "check",
            Task::H2 { .. } => "h2",
            Task::Cder { .. } => "cder",
            Task::Coeff { .. } => "coeff",
            Task::Modules { .. } => "modules",
            Task::Gd => "gd",
            Task::Solve { .. } => "solve",
        }
    }
}

/// A task at a parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub task: Task,
    pub at: Assignment,
}

/// Results at one explored parameter point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub at: String,
    pub dims: BTreeMap<String, usize>,
    pub bases: Vec<String>,
    pub genericity: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JobReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub dims: BTreeMap<String, usize>,
    pub bases: Vec<String>,
    pub genericity: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Human-readable summary.
    #[serde(skip)]
    pub text: String,
}

/// Everything one invocation produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub algebra: String,
    pub params: Vec<String>,
    pub jobs: Vec<JobReport>,
}

impl Report {
    pub fn new(doc: &AlgebraDoc) -> Report {
        Report { algebra: doc.algebra.name.clone(), params: doc.algebra.params.clone(), jobs: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.jobs.iter().all(|j| j.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        self.jobs.iter().map(|j| j.text.as_str()).collect()
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn verdict(r: &VerifyReport, job: &mut JobReport) {
    job.passed &= r.passed;
    if !r.passed && job.witness.is_none() {
        job.witness = r.witness.clone();
    }
    let _ = writeln!(job.text, "  {r}");
}

fn h2_case(at: &Assignment, s: &CocycleSolution) -> CaseReport {
    CaseReport {
        at: format_assignment(at),
        dims: [("Z2".into(), s.dim_z2()), ("B2".into(), s.dim_b2()), ("H2".into(), s.dim_h2())].into(),
        bases: s.render_representatives(),
        genericity: strings(&s.genericity),
    }
}

fn cder_case(at: &Assignment, s: &DerivationSpace) -> CaseReport {
    CaseReport {
        at: format_assignment(at),
        dims: [("all".into(), s.all.dim()), ("inner".into(), s.inner.dim()), ("outer".into(), s.outer_dim())].into(),
        bases: s.render_representatives(),
        genericity: strings(&s.genericity),
    }
}

/// Merges the offsets of an explored case with the requested point.
fn absolute(base: &Assignment, rel: &Assignment) -> Assignment {
    let mut at = base.clone();
    at.extend(rel.iter().map(|(k, v)| (k.clone(), v.clone())));
    at
}

fn write_cases(job: &mut JobReport) {
    let head = job.cases.first().cloned().unwrap_or_default();
    job.dims = head.dims.clone();
    job.bases = head.bases.clone();
    job.genericity = head.genericity.clone();
    let dims: Vec<String> = head.dims.iter().map(|(k, v)| format!("dim {k} = {v}")).collect();
    let _ = writeln!(job.text, "  {}", dims.join(", "));
    for b in &head.bases {
        let _ = writeln!(job.text, "    {b}");
    }
    if !head.genericity.is_empty() {
        let _ = writeln!(job.text, "  assuming nonzero: {}", head.genericity.join(", "));
    }
    for c in job.cases.iter().skip(1) {
        let dims: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(job.text, "  at {}: {}", c.at, dims.join(", "));
        for b in &c.bases {
            let _ = writeln!(job.text, "    {b}");
        }
    }
}

/// Runs one request; errors are usage errors (bad parameters, wrong shape).
pub fn run(doc: &AlgebraDoc, req: &Request) -> Result<JobReport, DriverError> {
    let a = doc.algebra.specialize(&req.at)?;
    let mut job = JobReport {
        command: req.task.name().into(),
        parameters: req.at.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect(),
        passed: true,
        ..JobReport::default()
    };
    let at_text = if req.at.is_empty() { String::new() } else { format!(" at {}", format_assignment(&req.at)) };
    let _ = writeln!(job.text, "{} {}{at_text}", job.command, a.name);
    match &req.task {
        Task::Check => {
            let r = check_axioms(&a);
            verdict(&r, &mut job);
        }
        Task::H2 { deg, explore } => {
            let _ = writeln!(job.text, "  degree bound {deg}");
            job.cases = if *explore {
                explore_cocycles(&a, *deg).iter().map(|(at, s)| h2_case(&absolute(&req.at, at), s)).collect()
            } else {
                vec![h2_case(&req.at, &solve_cocycles(&a, *deg))]
            };
            write_cases(&mut job);
        }
        Task::Cder { deg_l, deg_d, explore } => {
            let bounds = (*deg_l, *deg_d);
            let _ = writeln!(job.text, "  stable through bound ({deg_l}, {deg_d}) only; no claim beyond it");
            job.cases = if *explore {
                explore_derivations(&a, bounds).iter().map(|(at, s)| cder_case(&absolute(&req.at, at), s)).collect()
            } else {
                vec![cder_case(&req.at, &solve_derivations(&a, bounds))]
            };
            write_cases(&mut job);
            if let Some(o) = job.dims.get("outer") {
                let _ = writeln!(job.text, "  outer dim = {o}");
            }
        }
        Task::Coeff { window, dump } => {
            let w = build_window(&a, *window);
            job.dims.insert("window".into(), *window as usize);
            job.dims.insert("brackets".into(), w.brackets.values().filter(|s| !s.is_empty()).count());
            verdict(&w.check_antisymmetry(), &mut job);
            verdict(&w.check_window_jacobi(), &mut job);
            if *dump {
                job.bases = w.dump().lines().map(String::from).collect();
            }
        }
        Task::Modules { deg } => run_modules(&a, *deg, &mut job)?,
        Task::Gd => run_gd(doc, &a, &req.at, &mut job),
        Task::Solve { unknowns } => {
            let names: Vec<&str> = unknowns.iter().map(String::as_str).collect();
            match solve_parameter_constraints(&a, &names) {
                Ok(sol) => {
                    job.bases = sol.solved.iter().map(|(n, v)| format!("{n} = {v}")).collect();
                    job.genericity = strings(&sol.genericity);
                    job.dims.insert("free".into(), sol.free.len());
                    job.notes = sol.free.iter().map(|f| format!("free {f}")).collect();
                    let _ = writeln!(job.text, "  {sol}");
                }
                Err(LcaError::UnknownParam(p)) => {
                    return Err(DriverError::Usage(format!("`{p}` is not a declared parameter")))
                }
                Err(e) => {
                    job.passed = false;
                    job.witness = Some(Witness {
                        at: names.iter().map(|s| s.to_string()).collect(),
                        component: None,
                        residual: e.to_string(),
                    });
                    let _ = writeln!(job.text, "  FAIL: {e}");
                }
            }
        }
    }
    Ok(job)
}

fn run_modules(a: &LcaPresentation, deg: u32, job: &mut JobReport) -> Result<(), DriverError> {
    if a.rank() == 1 {
        for f in virasoro_actions() {
            let act = Rank1Action::new(&a.gens, vec![f]);
            let _ = writeln!(job.text, "  {act}");
            job.bases.push(act.to_string());
            verdict(&check_module(a, &act), job);
        }
        return Ok(());
    }
    let families = classify_rank1(a, deg).map_err(|e| DriverError::Usage(e.to_string()))?;
    let _ = writeln!(job.text, "  degree bound {deg}; L acts by a rank-1 Virasoro action");
    for fam in &families {
        let locus = if fam.locus.is_empty() { "generic".to_string() } else { fam.locus.clone() };
        let line = format!("{locus}: {}", fam.action);
        let _ = writeln!(job.text, "  {line}");
        if fam.h_vanishes {
            job.notes.push(format!("{locus}: h = 0, so the [Y l M] compatibility is vacuous"));
        }
        let r = check_module(
            &a.specialize(
                &fam.at.iter().filter(|(k, _)| a.params.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
            )?,
            &fam.act,
        );
        verdict(&r, job);
        job.bases.push(line);
    }
    job.dims.insert("families".into(), families.len());
    Ok(())
}

fn run_gd(doc: &AlgebraDoc, a: &LcaPresentation, at: &Assignment, job: &mut JobReport) {
    let g = match &doc.gd {
        Some(g) => g.specialize(at),
        None => match GdBialgebra::from_quadratic(a) {
            Ok(g) => g,
            Err(e) => {
                job.passed = false;
                job.witness = Some(Witness { at: Vec::new(), component: None, residual: e.to_string() });
                let _ = writeln!(job.text, "  FAIL: {e}");
                return;
            }
        },
    };
    let r = g.check_all();
    verdict(&r, job);
    if r.passed {
        let q = g.to_quadratic_unchecked();
        let same = q.same_table(a);
        let _ = writeln!(job.text, "  quadratic algebra matches the table: {}", if same { "yes" } else { "no" });
        if !same {
            job.passed = false;
            job.witness = Some(Witness {
                at: Vec::new(),
                component: None,
                residual: "quadratic algebra differs from the brackets".into(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{document, parse};
    use crate::lca::{tsv_ab, tsv_c};
    use crate::poly::rat;

    fn request(task: Task, at: &[(&str, i64, i64)]) -> Request {
        Request { task, at: at.iter().map(|(k, n, d)| (k.to_string(), rat(*n, *d))).collect() }
    }

    #[test]
    fn h2_at_a_point() {
        let job = run(&document(&tsv_ab()), &request(Task::H2 { deg: 6, explore: false }, &[("a", 1, 1), ("b", 0, 1)]))
            .unwrap();
        assert_eq!(job.dims["H2"], 3);
        assert_eq!(job.parameters["a"], "1");
        assert!(job.text.contains("dim B2 = 3, dim H2 = 3, dim Z2 = 6"));
    }

    #[test]
    fn exploration_lists_cases() {
        let job = run(&document(&tsv_c()), &request(Task::H2 { deg: 6, explore: true }, &[])).unwrap();
        assert_eq!(job.cases.len(), 2);
        assert_eq!(job.cases[1].at, "c=0");
        assert_eq!(job.cases[1].dims["H2"], 2);
    }

    #[test]
    fn non_quadratic_gd_fails_with_witness() {
        let job = run(&document(&tsv_c()), &request(Task::Gd, &[])).unwrap();
        assert!(!job.passed);
        assert!(job.witness.unwrap().residual.contains("d^2"));
    }

    #[test]
    fn unknown_parameter_is_a_usage_error() {
        let err = run(&document(&tsv_ab()), &request(Task::Check, &[("q", 1, 1)]));
        assert!(err.is_err());
        let err = run(&document(&tsv_ab()), &request(Task::Solve { unknowns: vec!["q".into()] }, &[]));
        assert!(matches!(err, Err(DriverError::Usage(_))));
    }

    #[test]
    fn json_is_stable() {
        let doc = parse("algebra Vir() { generators: L; bracket L L = (d + 2*l)*L; }").unwrap();
        let mut report = Report::new(&doc);
        report.jobs.push(run(&doc, &request(Task::H2 { deg: 4, explore: false }, &[])).unwrap());
        let again = report.clone();
        assert_eq!(report.to_json(), again.to_json());
        assert!(report.to_json().ends_with("}\n"));
        assert!(report.passed());
    }
}
