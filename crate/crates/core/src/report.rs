//! JSON and plain-text renderings of an [`AnalysisReport`].

use std::fmt::Write as _;

use crate::pipeline::AnalysisReport;

pub fn to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn to_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let g = &report.group;
    writeln!(out, "group    {} (order {}, degree {})", g.spec, g.order, g.degree).unwrap();
    writeln!(out, "prime    {}", report.prime).unwrap();
    if let Some(s) = &report.sylow {
        writeln!(out, "sylow    order {}, {} conjugates, {}", s.order, s.count, s.generators).unwrap();
    }
    if let Some(o) = &report.omega {
        writeln!(
            out,
            "omega    {} members in {} classes, minimum {}, longest chain {}",
            o.members.len(),
            o.classes.len(),
            o.minimum,
            o.chain_length
        )
        .unwrap();
    }
    if !report.centric.is_empty() {
        writeln!(out, "\np-subgroup classes").unwrap();
        for c in &report.centric {
            writeln!(
                out,
                "  {:>5} x{:<3} {:<8} {:<6} {}",
                c.order,
                c.class_size,
                if c.centric { "centric" } else { "-" },
                if c.in_omega { "omega" } else { "-" },
                c.subgroup
            )
            .unwrap();
        }
    }
    if !report.categories.is_empty() {
        writeln!(out, "\ncategories").unwrap();
        for c in &report.categories {
            writeln!(out, "  {:<28} {:>4} objects {:>7} morphisms", c.name, c.objects, c.morphisms).unwrap();
        }
    }
    if !report.homology.is_empty() {
        writeln!(out, "\nmod-{} homology", report.prime).unwrap();
        for h in &report.homology {
            let certified = h
                .certified_through
                .map_or("none".to_string(), |d| format!("d <= {d}"));
            writeln!(out, "  {:<28} {:?} certified {certified}", h.name, h.dims).unwrap();
        }
    }
    if !report.limits.is_empty() {
        writeln!(out, "\nhigher limits").unwrap();
        for l in &report.limits {
            writeln!(out, "  {:<36} {:?}", l.name, l.dims).unwrap();
        }
    }
    writeln!(out, "\nverdicts").unwrap();
    for v in &report.verdicts {
        writeln!(out, "  {:<14} {:<32} {}", v.status.as_str(), v.name, v.detail).unwrap();
    }
    writeln!(out, "\noverall  {}", report.overall.as_str()).unwrap();
    if let Some(e) = &report.error {
        writeln!(out, "error    {e}").unwrap();
    }
    if let Some(t) = &report.timings {
        let parts: Vec<String> = t.iter().map(|t| format!("{} {:.1}ms", t.stage, t.millis)).collect();
        writeln!(out, "timings  {}", parts.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::GroupSpec;
    use crate::pipeline::{analyze, run_pipeline, Options};
    use crate::verdict::Status;
    use crate::Prime;

    #[test]
    fn empty_verdict_set_is_not_certified() {
        let g = GroupSpec::parse("cyc:2").unwrap().build().unwrap();
        let options = Options {
            checks: Some(Vec::new()),
            ..Options::default()
        };
        let r = analyze(&g, "cyc:2", Prime::new(2).unwrap(), &options);
        assert!(r.verdicts.is_empty());
        assert_eq!(r.overall, Status::NotCertified);
        assert_eq!(r.exit_code(), 0);
        assert!(to_text(&r).contains("overall  not-certified"));
    }

    #[test]
    fn s3_json() {
        let options = Options {
            checks: Some(vec!["sylow_conjugacy".into()]),
            ..Options::default()
        };
        let r = run_pipeline(&GroupSpec::parse("sym:3").unwrap(), Prime::new(2).unwrap(), &options)
            .unwrap()
            .without_timings();
        let json = to_json(&r);
        let compact: String = json.split_whitespace().collect();
        assert!(compact.contains("\"sylow\":{\"order\":2,\"count\":3"), "{json}");
        assert!(compact.contains("\"schema\":\"plocal.report/1\""));
        assert!(!compact.contains("timings"));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["verdicts"][0]["status"], "pass");
        assert_eq!(value["overall"], "pass");
    }
}
