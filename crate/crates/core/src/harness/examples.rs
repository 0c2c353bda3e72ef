//! Side-by-side reproduction of the worked examples.

use std::fmt::Write as _;

use super::budget::Budget;
use super::context::InstanceCtx;
use super::descriptor::InstanceDescriptor;
use super::registry::registry;
use super::report::{ClaimStatus, PartResult};
use super::verify::check_certificate;

pub struct ExampleBlock {
    pub id: String,
    pub instance: String,
    pub parts: Vec<PartResult>,
    /// One entry per part: `Ok` when the checker accepts its certificate.
    pub checks: Vec<Result<(), String>>,
}

impl ExampleBlock {
    pub fn agrees(&self) -> bool {
        self.parts.iter().all(|p| p.status == ClaimStatus::Confirmed)
    }
}

/// Evaluates every bundle bound to a single instance.
pub fn reproduce() -> Result<Vec<ExampleBlock>, String> {
    let budget = Budget::default();
    let mut out = Vec::new();
    for spec in registry() {
        let Some(z) = spec.instance else { continue };
        let ctx = InstanceCtx::new(0, InstanceDescriptor::Integer(z), budget.max_order);
        let t = spec.evaluate(&ctx, &budget).map_err(|e| format!("{}: {e}", spec.id))?;
        let checks = t.parts.iter().map(|p| check_certificate(&p.certificate).map_err(|e| e.to_string())).collect();
        out.push(ExampleBlock { id: spec.id.to_string(), instance: ctx.label, parts: t.parts, checks });
    }
    Ok(out)
}

pub fn render(blocks: &[ExampleBlock]) -> String {
    let mut s = String::new();
    for b in blocks {
        let label = if b.agrees() { "Confirmed" } else { "Discrepancy" };
        let _ = writeln!(s, "{} on {}: {label}", b.id, b.instance);
        let w = b.parts.iter().map(|p| p.claimed.chars().count()).max().unwrap_or(0);
        for (p, c) in b.parts.iter().zip(&b.checks) {
            let mark = if p.status == ClaimStatus::Confirmed { "agree" } else { "DIFFER" };
            let cert = if c.is_ok() { "certificate ok" } else { "certificate REJECTED" };
            let pad = w - p.claimed.chars().count();
            let _ = writeln!(s, "  stated: {}{:pad$}  | computed: {}  [{mark}, {cert}]", p.claimed, "", p.computed);
        }
        s.push('\n');
    }
    s
}
