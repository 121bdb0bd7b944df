//! The full analysis of one group at one prime: Sylow data, `Ω`, centric
//! subgroups, the transporter, linking and orbit categories, their mod-p
//! homology, and the higher-limit computations that connect them.
//!
//! No p-completion is computed. Every comparison is a statement about
//! `H_*(−; F_p)` in the degrees the truncation certifies.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::category::{
    build_linking, build_orbit, build_transporter, circ_adjunction_check, linking_well_defined,
    one_object_category, orbit_well_defined, quotient_projection, verify_kernel_lemma, CategoryFunctor,
    CategoryKind, FiniteCategory,
};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::group::{PermutationGroup, Subgroup};
use crate::homology::{
    chain_counts, homology_iso_verdict, induced_chain_map, nerve_complex, IsoVerdict, NerveComplex, DEFAULT_BUDGET,
};
use crate::input::GroupSpec;
use crate::limits::{
    cohomology_functor, filtration_pipeline, lambda_star, quotient_reduction_check, orbit_skeleton, p_subgroup_classes,
    punctured_functor, punctured_vanishing, restriction_check, ModuleData,
};
use crate::omega::{classify_centric, closure_properties, p_subgroups, verify_decomposition, OmegaPoset};
use crate::verdict::Status;

pub const SCHEMA: &str = "plocal.report/1";

pub const SCOPE: &str = "mod-p homology and higher limits of truncated complexes; no p-completion is computed";

/// Every verdict the pipeline can emit, in report order.
pub const VERDICTS: [&str; 19] = [
    "sylow_conjugacy",
    "closure_extensive_monotone",
    "closure_fixes_omega",
    "closure_transporter_inclusion",
    "closure_transporter_equality",
    "centric_decomposition",
    "category_laws",
    "orbit_closure_adjunction",
    "projection_kernel_hypotheses",
    "transporter_linking_homology",
    "omega_transporter_vs_bg",
    "punctured_vanishing",
    "normalizer_quotient_reduction",
    "lambda_vanishing",
    "upward_restriction",
    "filtration_stages",
    "centric_omega_inclusion",
    "centric_omega_vs_all_centric",
    "linking_vs_bg",
];

#[derive(Clone, Debug, Serialize)]
pub struct Options {
    /// Nerves are built through this degree; homology is certified two below.
    pub max_degree: usize,
    /// Higher limits `lim^n` are reported for `n < max_limit_degree`.
    pub max_limit_degree: usize,
    /// Largest `i` for the functors `H^i(B−; F_p)`.
    pub cohomology_index_max: usize,
    pub budget: usize,
    /// One object per conjugacy class in the transporter and linking categories.
    pub skeletal: bool,
    /// Only these verdicts, when set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: 4,
            max_limit_degree: 3,
            cohomology_index_max: 2,
            budget: DEFAULT_BUDGET,
            skeletal: true,
            checks: None,
        }
    }
}

impl Options {
    fn wants(&self, name: &str) -> bool {
        self.checks
            .as_ref()
            .is_none_or(|c| c.iter().any(|x| x == name))
    }

    fn wants_any(&self, names: &[&str]) -> bool {
        names.iter().any(|n| self.wants(n))
    }

    /// Fails on a verdict name that does not exist.
    pub fn validate(&self) -> Result<()> {
        for c in self.checks.iter().flatten() {
            if !VERDICTS.contains(&c.as_str()) {
                return Err(Error::Invalid(format!("unknown check '{c}'")));
            }
        }
        if self.max_degree < 1 || self.max_limit_degree < 1 {
            return Err(Error::Invalid("degrees must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub spec: String,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowSummary {
    pub order: usize,
    pub count: usize,
    pub generators: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaSummary {
    pub members: Vec<String>,
    pub orders: Vec<usize>,
    pub centric: Vec<bool>,
    pub classes: Vec<Vec<usize>>,
    pub hasse_edges: Vec<(usize, usize)>,
    pub minimum: String,
    pub chain_length: usize,
}

/// One conjugacy class of p-subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct CentricRow {
    pub subgroup: String,
    pub order: usize,
    pub class_size: usize,
    pub centric: bool,
    pub in_omega: bool,
    pub centralizer_order: usize,
    pub center_order: usize,
    pub residual_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategorySize {
    pub name: &'static str,
    pub kind: CategoryKind,
    pub objects: usize,
    pub morphisms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub name: &'static str,
    /// Degree through which the nerve was built.
    pub truncation: usize,
    /// `dim H_d` for `d < truncation`.
    pub dims: Vec<usize>,
    /// Comparisons are certified for `d ≤ truncation − 2`.
    pub certified_through: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitsRow {
    pub name: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub stage: &'static str,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub scope: &'static str,
    pub group: GroupSummary,
    pub prime: u32,
    pub options: Options,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow: Option<SylowSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaSummary>,
    pub centric: Vec<CentricRow>,
    pub categories: Vec<CategorySize>,
    pub homology: Vec<HomologyRow>,
    pub limits: Vec<LimitsRow>,
    pub verdicts: Vec<Verdict>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl AnalysisReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn homology_row(&self, name: &str) -> Option<&HomologyRow> {
        self.homology.iter().find(|h| h.name == name)
    }

    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }

    /// 0 for pass or not certified, 1 for any failure, 2 for an aborted run.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.overall == Status::Fail {
            1
        } else {
            0
        }
    }
}

/// Builds the group and runs every requested check. Only group construction
/// errors are returned; later errors end the run with a partial report.
pub fn run_pipeline(spec: &GroupSpec, prime: Prime, options: &Options) -> Result<AnalysisReport> {
    options.validate()?;
    let group = spec.build()?;
    Ok(analyze(&group, &spec.to_string(), prime, options))
}

pub fn analyze(group: &PermutationGroup, label: &str, prime: Prime, options: &Options) -> AnalysisReport {
    let mut run = Run {
        group,
        p: prime,
        opts: options,
        report: AnalysisReport {
            schema: SCHEMA,
            scope: SCOPE,
            group: GroupSummary {
                spec: label.to_string(),
                order: group.order(),
                degree: group.degree(),
                generators: group.generators().iter().map(|g| g.to_string()).collect(),
            },
            prime: prime.get(),
            options: options.clone(),
            sylow: None,
            omega: None,
            centric: Vec::new(),
            categories: Vec::new(),
            homology: Vec::new(),
            limits: Vec::new(),
            verdicts: Vec::new(),
            overall: Status::NotCertified,
            error: None,
            timings: Some(Vec::new()),
        },
        complexes: HashMap::new(),
    };
    if let Err(e) = run.all() {
        run.report.error = Some(e.to_string());
    }
    let order = |name: &str| VERDICTS.iter().position(|v| *v == name).unwrap_or(usize::MAX);
    run.report.verdicts.sort_by_key(|v| order(v.name));
    run.report.overall = Status::combine(run.report.verdicts.iter().map(|v| v.status));
    run.report
}

struct Categories {
    omega: Vec<Subgroup>,
    centric: Vec<Subgroup>,
    omega_centric: Vec<Subgroup>,
    t_omega: Arc<FiniteCategory>,
    t_omega_centric: Arc<FiniteCategory>,
    t_centric: Arc<FiniteCategory>,
    bg: Arc<FiniteCategory>,
}

struct Run<'a> {
    group: &'a PermutationGroup,
    p: Prime,
    opts: &'a Options,
    report: AnalysisReport,
    complexes: HashMap<(&'static str, usize), Arc<NerveComplex>>,
}

impl Run<'_> {
    fn timed<T>(&mut self, stage: &'static str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f(self);
        let millis = (start.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3;
        if let Some(t) = self.report.timings.as_mut() {
            t.push(Timing { stage, millis });
        }
        out
    }

    fn verdict(&mut self, name: &'static str, status: Status, detail: impl Into<String>) {
        if self.opts.wants(name) {
            self.report.verdicts.push(Verdict {
                name,
                status,
                detail: detail.into(),
            });
        }
    }

    fn label(&self, s: &Subgroup) -> String {
        self.group.subgroup_label(s)
    }

    fn all(&mut self) -> Result<()> {
        let omega = self.timed("sylow_and_omega", |r| r.sylow_and_omega())?;
        let reps = self.timed("centric", |r| r.centric(&omega))?;
        let cats = self.timed("categories", |r| r.categories(&omega, &reps))?;
        self.timed("homology", |r| r.homology(&cats))?;
        self.timed("limits", |r| r.limits(&omega))?;
        Ok(())
    }

    fn sylow_and_omega(&mut self) -> Result<OmegaPoset> {
        let (g, p) = (self.group, self.p);
        let omega = OmegaPoset::build(g, p);
        let s = omega.sylow();
        let count = omega.sylows().len();
        self.report.sylow = Some(SylowSummary {
            order: s.order(),
            count,
            generators: self.label(s),
        });

        // every p-element lies in a conjugate of S, and the count is |G : N_G(S)| ≡ 1 mod p
        let covered = g
            .elems()
            .filter(|&x| p.is_power(g.elem_order(x)))
            .all(|x| omega.sylows().iter().any(|t| t.contains(x)));
        let index = g.order() / g.normalizer(s).order();
        let ok = g.is_sylow(s, p) && covered && count == index && count % p.get() as usize == 1;
        self.verdict(
            "sylow_conjugacy",
            Status::from_bool(ok),
            format!("{count} Sylow subgroups of order {}, index of normalizer {index}", s.order()),
        );

        let members = omega.members();
        self.report.omega = Some(OmegaSummary {
            members: members.iter().map(|m| self.label(m)).collect(),
            orders: members.iter().map(Subgroup::order).collect(),
            centric: members
                .iter()
                .map(|m| crate::omega::is_centric(g, p, m))
                .collect(),
            classes: omega.classes().to_vec(),
            hasse_edges: omega.hasse_edges(),
            minimum: self.label(omega.minimum()),
            chain_length: omega.chain_length(),
        });

        if self.opts.wants_any(&VERDICTS[1..5]) {
            let c = closure_properties(g, &omega)?;
            let n = c.subgroups;
            self.verdict(
                "closure_extensive_monotone",
                Status::from_bool(c.extensive_monotone),
                format!("{n} subgroups of S"),
            );
            self.verdict("closure_fixes_omega", Status::from_bool(c.fixes_omega), format!("{n} subgroups of S"));
            self.verdict(
                "closure_transporter_inclusion",
                Status::from_bool(c.transporter_inclusion),
                format!("{} pairs", n * n),
            );
            self.verdict(
                "closure_transporter_equality",
                Status::from_bool(c.transporter_equality),
                format!("{} pairs", n * omega.len()),
            );
        }
        Ok(omega)
    }

    /// Classifies the conjugacy classes of p-subgroups; returns one
    /// representative of each, inside S.
    fn centric(&mut self, omega: &OmegaPoset) -> Result<Vec<Subgroup>> {
        let (g, p) = (self.group, self.p);
        let all = p_subgroups(g, omega.sylow());
        let reps = p_subgroup_classes(g, omega.sylow());
        let table = classify_centric(g, p, &reps)?;
        for e in table.entries() {
            let class_size = all
                .iter()
                .filter(|s| g.conjugating_element(s, &e.subgroup).is_some())
                .count();
            self.report.centric.push(CentricRow {
                subgroup: self.label(&e.subgroup),
                order: e.subgroup.order(),
                class_size,
                centric: e.is_centric,
                in_omega: omega.contains(&e.subgroup),
                centralizer_order: e.centralizer.order(),
                center_order: e.center.order(),
                residual_order: e.residual.order(),
            });
        }
        if self.opts.wants("centric_decomposition") {
            let full = classify_centric(g, p, &all)?;
            let centric: Vec<_> = full.entries().iter().filter(|e| e.is_centric).collect();
            let ok = centric.iter().all(|e| verify_decomposition(g, p, e));
            self.verdict(
                "centric_decomposition",
                Status::from_bool(ok),
                format!("{} centric p-subgroups", centric.len()),
            );
        }
        Ok(reps)
    }

    fn objects(&self, omega: &OmegaPoset, reps: &[Subgroup], keep: impl Fn(&Subgroup) -> bool) -> Vec<Subgroup> {
        if self.opts.skeletal {
            reps.iter().filter(|s| keep(s)).cloned().collect()
        } else {
            p_subgroups(self.group, omega.sylow())
                .into_iter()
                .filter(|s| keep(s))
                .collect()
        }
    }

    fn size(&mut self, name: &'static str, c: &FiniteCategory) {
        self.report.categories.push(CategorySize {
            name,
            kind: c.kind(),
            objects: c.object_count(),
            morphisms: c.morphism_count(),
        });
    }

    fn categories(&mut self, omega: &OmegaPoset, reps: &[Subgroup]) -> Result<Categories> {
        let (g, p) = (self.group, self.p);
        let centric_of = |s: &Subgroup| crate::omega::is_centric(g, p, s);
        let omega_objs = self.objects(omega, reps, |s| omega.contains(s));
        let centric_objs = self.objects(omega, reps, |s| centric_of(s));
        let omega_centric = self.objects(omega, reps, |s| omega.contains(s) && centric_of(s));

        let t_omega = Arc::new(build_transporter(g, &omega_objs));
        let t_omega_centric = Arc::new(build_transporter(g, &omega_centric));
        let t_centric = Arc::new(build_transporter(g, &centric_objs));
        let l_centric = build_linking(g, p, &centric_objs)?;
        let sylow = omega.sylow();
        let o_omega = orbit_skeleton(g, sylow, omega.members());
        let o_all = build_orbit(g, reps);
        let bg = Arc::new(one_object_category(g));
        self.size("transporter_omega", &t_omega);
        self.size("transporter_omega_centric", &t_omega_centric);
        self.size("transporter_centric", &t_centric);
        self.size("linking_centric", &l_centric);
        self.size("orbit_omega", &o_omega);
        self.size("orbit_p_subgroups", &o_all);

        if self.opts.wants("category_laws") {
            let all: [&FiniteCategory; 6] = [&t_omega, &t_omega_centric, &t_centric, &l_centric, &o_omega, &o_all];
            let laws = all.iter().all(|c| c.check_laws().holds());
            let linking = linking_well_defined(g, p, &l_centric)?;
            let orbit = orbit_well_defined(g, &o_omega)? && orbit_well_defined(g, &o_all)?;
            self.verdict(
                "category_laws",
                Status::from_bool(laws && linking && orbit),
                format!("laws {laws}, linking cosets {linking}, orbit cosets {orbit}"),
            );
        }
        if self.opts.wants("orbit_closure_adjunction") {
            let a = circ_adjunction_check(g, omega)?;
            self.verdict(
                "orbit_closure_adjunction",
                Status::from_bool(a.holds()),
                format!("{} pairs", a.pairs),
            );
        }
        Ok(Categories {
            omega: omega_objs,
            centric: centric_objs,
            omega_centric,
            t_omega,
            t_omega_centric,
            t_centric,
            bg,
        })
    }

    /// Largest truncation within the budget for every category, at most the
    /// requested degree.
    fn fit(&self, cats: &[&FiniteCategory]) -> usize {
        let budget = self.opts.budget as u128;
        let mut top = self.opts.max_degree;
        for c in cats {
            let counts = chain_counts(c, top);
            if let Some(d) = counts.iter().position(|&n| n > budget) {
                top = d.saturating_sub(1).min(top);
            }
        }
        top
    }

    fn complex(&mut self, name: &'static str, c: &Arc<FiniteCategory>, top: usize) -> Result<Arc<NerveComplex>> {
        if let Some(n) = self.complexes.get(&(name, top)) {
            if Arc::ptr_eq(n.nerve.category(), c) {
                return Ok(n.clone());
            }
        }
        let n = Arc::new(nerve_complex(c, self.p, top, self.opts.budget)?);
        self.complexes.insert((name, top), n.clone());
        Ok(n)
    }

    /// Homology of a category, reusing an earlier row at the same truncation.
    fn dims(&mut self, name: &'static str, c: &Arc<FiniteCategory>, top: usize) -> Result<Vec<usize>> {
        if let Some(h) = self.report.homology_row(name).filter(|h| h.truncation == top) {
            return Ok(h.dims.clone());
        }
        let dims = self.complex(name, c, top)?.complex.homology().dims;
        self.record(name, top, &dims);
        Ok(dims)
    }

    fn record(&mut self, name: &'static str, top: usize, dims: &[usize]) {
        if self.report.homology.iter().any(|h| h.name == name && h.truncation >= top) {
            return;
        }
        self.report.homology.retain(|h| h.name != name);
        self.report.homology.push(HomologyRow {
            name,
            truncation: top,
            dims: dims.to_vec(),
            certified_through: top.checked_sub(2),
        });
    }

    fn compare(
        &mut self,
        names: (&'static str, &'static str),
        f: &CategoryFunctor,
    ) -> Result<(usize, IsoVerdict)> {
        let top = self.fit(&[f.source(), f.target()]);
        let a = self.complex(names.0, f.source(), top)?;
        let b = self.complex(names.1, f.target(), top)?;
        let map = induced_chain_map(f, &a, &b)?;
        let v = homology_iso_verdict(&map, &a.complex, &b.complex)?;
        self.record(names.0, top, &v.source);
        self.record(names.1, top, &v.target);
        Ok((top, v))
    }

    fn iso_status(&mut self, name: &'static str, top: usize, v: &IsoVerdict) {
        let status = if v.iso.is_empty() {
            Status::NotCertified
        } else {
            Status::from_bool(v.is_iso())
        };
        let through = v.iso.len().checked_sub(1).map_or("none".to_string(), |d| d.to_string());
        let note = if top < self.opts.max_degree {
            format!(", truncated to degree {top} by the budget")
        } else {
            String::new()
        };
        self.verdict(
            name,
            status,
            format!(
                "source {:?}, target {:?}, cone {:?}, certified through degree {through}{note}",
                v.source, v.target, v.cone
            ),
        );
    }

    fn homology(&mut self, cats: &Categories) -> Result<()> {
        let (g, p) = (self.group, self.p);
        if self.opts.wants("projection_kernel_hypotheses") || self.opts.wants("transporter_linking_homology") {
            let proj = quotient_projection(g, p, &cats.t_centric)?;
            let k = verify_kernel_lemma(&proj, p);
            let biggest = k.kernel_orders.iter().max().copied().unwrap_or(1);
            self.verdict(
                "projection_kernel_hypotheses",
                Status::from_bool(k.holds()),
                format!("largest kernel order {biggest}, kernels are p-groups: {}", k.kernels_p_groups),
            );
            if self.opts.wants("transporter_linking_homology") {
                let (top, v) = self.compare(("transporter_centric", "linking_centric"), &proj)?;
                self.iso_status("transporter_linking_homology", top, &v);
            }
        }
        if self.opts.wants("omega_transporter_vs_bg") {
            // each morphism goes to its witness in the one-object category
            let morphisms = cats
                .t_omega
                .morphisms()
                .iter()
                .map(|m| m.witness.expect("transporter witness").index())
                .collect();
            let to_bg = CategoryFunctor::new(
                cats.t_omega.clone(),
                cats.bg.clone(),
                vec![0; cats.t_omega.object_count()],
                morphisms,
            )?;
            let (top, v) = self.compare(("transporter_omega", "bg"), &to_bg)?;
            self.iso_status("omega_transporter_vs_bg", top, &v);
        }
        if self.opts.wants("centric_omega_inclusion") {
            let inc = inclusion(&cats.omega_centric, &cats.omega, &cats.t_omega_centric, &cats.t_omega)?;
            let (top, v) = self.compare(("transporter_omega_centric", "transporter_omega"), &inc)?;
            self.iso_status("centric_omega_inclusion", top, &v);
        }
        if self.opts.wants("centric_omega_vs_all_centric") {
            let inc = inclusion(&cats.omega_centric, &cats.centric, &cats.t_omega_centric, &cats.t_centric)?;
            let (top, v) = self.compare(("transporter_omega_centric", "transporter_centric"), &inc)?;
            self.iso_status("centric_omega_vs_all_centric", top, &v);
        }
        if self.opts.wants("linking_vs_bg") {
            let l = Arc::new(build_linking(g, p, &cats.centric)?);
            let top = self.fit(&[&l, &cats.bg]);
            let hl = self.dims("linking_centric", &l, top)?;
            let hb = self.dims("bg", &cats.bg, top)?;
            let certified = top.saturating_sub(1);
            let status = if certified == 0 {
                Status::NotCertified
            } else {
                Status::from_bool(hl[..certified] == hb[..certified])
            };
            let detail = match certified {
                0 => "nothing certified within the budget".to_string(),
                n => format!(
                    "linking {:?}, bar {:?}, compared through degree {}",
                    &hl[..n],
                    &hb[..n],
                    n - 1
                ),
            };
            self.verdict("linking_vs_bg", status, detail);
        }
        Ok(())
    }

    fn limits(&mut self, omega: &OmegaPoset) -> Result<()> {
        let (g, p) = (self.group, self.p);
        let nmax = self.opts.max_limit_degree;
        let budget = self.opts.budget;
        let imax = self.opts.cohomology_index_max;

        if self.opts.wants("lambda_vanishing") {
            let dims = lambda_star(g, p, &ModuleData::trivial(g, 1), nmax, budget)?.dims;
            self.report.limits.push(LimitsRow {
                name: "lambda_trivial".into(),
                dims: dims.clone(),
            });
            if p.divides(g.order()) {
                self.verdict(
                    "lambda_vanishing",
                    Status::from_bool(dims.iter().all(|&d| d == 0)),
                    format!("Λ^* of the trivial module {dims:?}"),
                );
            } else {
                self.verdict(
                    "lambda_vanishing",
                    Status::NotApplicable,
                    format!("no element of order {p}; Λ^* {dims:?}"),
                );
            }
        }

        if self.opts.wants("punctured_vanishing") {
            let non_centric: Vec<Subgroup> = omega
                .class_representatives()
                .into_iter()
                .map(|k| omega.members()[k].clone())
                .filter(|q| !crate::omega::is_centric(g, p, q))
                .collect();
            let mut statuses = Vec::new();
            let mut failures = Vec::new();
            for q in &non_centric {
                for i in 0..=imax {
                    let r = punctured_vanishing(g, omega, q, i, nmax, budget)?;
                    if r.status.is_fail() {
                        failures.push(format!("{} i={i}", r.subgroup));
                    }
                    statuses.push(r.status);
                }
            }
            let status = if non_centric.is_empty() {
                Status::NotApplicable
            } else {
                Status::combine(statuses)
            };
            let detail = if failures.is_empty() {
                format!("{} non-centric classes, i ≤ {imax}", non_centric.len())
            } else {
                format!("non-vanishing: {}", failures.join(", "))
            };
            self.verdict("punctured_vanishing", status, detail);
        }

        if self.opts.wants("normalizer_quotient_reduction") {
            let cat = Arc::new(orbit_skeleton(g, omega.sylow(), &p_subgroups(g, omega.sylow())));
            let mut checks = 0;
            let mut failures = Vec::new();
            for i in 0..=imax {
                let fi = cohomology_functor(g, p, &cat, i, budget)?;
                for q in 0..cat.object_count() {
                    let phi = punctured_functor(g, &fi, q)?;
                    let c = quotient_reduction_check(g, p, q, &phi, nmax, budget)?;
                    checks += 1;
                    if !c.agree() {
                        failures.push(format!("{} i={i}", c.subgroup));
                    }
                }
            }
            let detail = if failures.is_empty() {
                format!("{checks} functors agree")
            } else {
                format!("disagree: {}", failures.join(", "))
            };
            self.verdict("normalizer_quotient_reduction", Status::from_bool(failures.is_empty()), detail);
        }

        if self.opts.wants("upward_restriction") {
            let cat = Arc::new(orbit_skeleton(g, omega.sylow(), omega.members()));
            let subs = cat.subgroups().expect("orbit objects are subgroups").to_vec();
            let keep: Vec<usize> = (0..subs.len())
                .filter(|&k| crate::omega::is_centric(g, p, &subs[k]))
                .collect();
            let mask: Vec<bool> = (0..subs.len()).map(|k| keep.contains(&k)).collect();
            let mut ok = true;
            for i in 0..=imax {
                let fi = cohomology_functor(g, p, &cat, i, budget)?;
                let r = restriction_check(&fi.with_support(&mask)?, &keep, nmax, budget)?;
                ok &= r.agree();
            }
            self.verdict(
                "upward_restriction",
                Status::from_bool(ok),
                format!("{} of {} classes centric, i ≤ {imax}", keep.len(), subs.len()),
            );
        }

        if self.opts.wants("filtration_stages") {
            let mut ok = true;
            let mut stages = 0;
            let mut first_failure = None;
            for i in 0..=imax {
                let r = filtration_pipeline(g, omega, i, nmax, budget)?;
                stages = r.stages.len();
                if let (None, Some(s)) = (&first_failure, r.first_failure()) {
                    first_failure = Some(format!("i={i} stage {} ({})", s + 1, r.stages[s].added));
                }
                ok &= r.passed();
                self.report.limits.push(LimitsRow {
                    name: format!("cohomology_{i}_orbit_omega"),
                    dims: r.omega.dims.clone(),
                });
                self.report.limits.push(LimitsRow {
                    name: format!("cohomology_{i}_orbit_omega_centric"),
                    dims: r.centric.dims.clone(),
                });
            }
            let detail = match first_failure {
                Some(f) => format!("first failure at {f}"),
                None => format!("{stages} stages, i ≤ {imax}"),
            };
            self.verdict("filtration_stages", Status::from_bool(ok), detail);
        }
        Ok(())
    }
}

/// The inclusion of transporter categories built on `small ⊆ large`.
fn inclusion(
    small: &[Subgroup],
    large: &[Subgroup],
    sub: &Arc<FiniteCategory>,
    whole: &Arc<FiniteCategory>,
) -> Result<CategoryFunctor> {
    let objects = small
        .iter()
        .map(|s| {
            large
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| Error::Invalid("object missing from the larger collection".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = sub
        .morphisms()
        .iter()
        .map(|m| {
            whole
                .find_by_witness(objects[m.source], objects[m.target], m.witness.expect("witness"))
                .ok_or_else(|| Error::Invalid("morphism missing from the larger category".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CategoryFunctor::new(sub.clone(), whole.clone(), objects, morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &str, p: u32, max_degree: usize) -> AnalysisReport {
        let options = Options {
            max_degree,
            ..Options::default()
        };
        run_pipeline(&GroupSpec::parse(spec).unwrap(), Prime::new(p).unwrap(), &options).unwrap()
    }

    #[test]
    fn s3_at_two() {
        let r = run("sym:3", 2, 4);
        assert_eq!(r.overall, Status::Pass, "{:#?}", r.verdicts);
        let s = r.sylow.as_ref().unwrap();
        assert_eq!((s.order, s.count), (2, 3));
        assert_eq!(r.homology_row("linking_centric").unwrap().dims[..3], [1, 1, 1]);
        assert_eq!(r.homology_row("bg").unwrap().dims[..3], [1, 1, 1]);
        assert_eq!(r.verdicts.len(), VERDICTS.len());
        assert!(r.error.is_none());
    }

    #[test]
    fn z3_at_two_is_degenerate() {
        let r = run("cyc:3", 2, 4);
        assert_eq!(r.overall, Status::Pass, "{:#?}", r.verdicts);
        assert_eq!(r.sylow.as_ref().unwrap().order, 1);
        assert!(r.centric.iter().all(|c| c.centric));
        assert_eq!(r.homology_row("linking_centric").unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(r.verdict("lambda_vanishing").unwrap().status, Status::NotApplicable);
        assert_eq!(r.verdict("punctured_vanishing").unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn s3_at_three() {
        let r = run("sym:3", 3, 5);
        assert_eq!(r.overall, Status::Pass, "{:#?}", r.verdicts);
        assert_eq!(r.homology_row("linking_centric").unwrap().dims[..4], [1, 0, 0, 1]);
        assert_eq!(r.homology_row("bg").unwrap().dims[..4], [1, 0, 0, 1]);
    }

    #[test]
    fn selected_checks_and_budget() {
        let options = Options {
            checks: Some(vec!["sylow_conjugacy".into()]),
            ..Options::default()
        };
        let r = run_pipeline(&GroupSpec::parse("sym:4").unwrap(), Prime::new(2).unwrap(), &options).unwrap();
        assert_eq!(r.verdicts.len(), 1);
        assert_eq!(r.overall, Status::Pass);
        let bad = Options {
            checks: Some(vec!["nonsense".into()]),
            ..Options::default()
        };
        assert!(run_pipeline(&GroupSpec::parse("sym:3").unwrap(), Prime::new(2).unwrap(), &bad).is_err());
        // a tiny budget truncates the homology comparisons to nothing certified
        let tiny = Options {
            budget: 10,
            ..Options::default()
        };
        let r = run_pipeline(&GroupSpec::parse("sym:3").unwrap(), Prime::new(2).unwrap(), &tiny).unwrap();
        assert!(r.error.is_some() || r.overall != Status::Fail);
        assert_eq!(r.exit_code(), if r.error.is_some() { 2 } else { 0 });
    }
}
