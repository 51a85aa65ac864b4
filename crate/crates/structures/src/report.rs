//! Pass/fail reports for axiom suites, with bounded witness lists.

use std::fmt;

use exactnum::Scalar;
use serde::Serialize;

/// Witnesses recorded per failing axiom are capped at this count.
pub const MAX_WITNESSES: usize = 8;

/// One concrete counterexample: where an identity failed and the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which basis elements (or matrix entry) the identity was evaluated at.
    pub context: String,
    /// Left-hand side, rendered canonically.
    pub lhs: String,
    /// Right-hand side, rendered canonically.
    pub rhs: String,
}

/// The outcome of checking one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomItem {
    /// Human-readable name of the axiom or property.
    pub axiom: String,
    /// Whether the axiom held everywhere.
    pub passed: bool,
    /// Up to [`MAX_WITNESSES`] counterexamples when it failed.
    pub witnesses: Vec<Witness>,
}

/// The outcome of a full axiom suite on one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// What was checked (e.g. a preset name or file path).
    pub subject: String,
    /// Per-axiom outcomes, in the order the checks ran.
    pub items: Vec<AxiomItem>,
}

impl AxiomReport {
    /// A fresh report for the given subject.
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport {
            subject: subject.into(),
            items: Vec::new(),
        }
    }

    /// Whether every axiom passed.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    /// All failing items.
    pub fn failing(&self) -> Vec<&AxiomItem> {
        self.items.iter().filter(|i| !i.passed).collect()
    }

    /// Look up an item by its axiom name.
    pub fn item(&self, axiom: &str) -> Option<&AxiomItem> {
        self.items.iter().find(|i| i.axiom == axiom)
    }

    /// Append the items of another report, prefixing their axiom names.
    pub fn absorb(&mut self, prefix: &str, other: AxiomReport) {
        for mut item in other.items {
            if !prefix.is_empty() {
                item.axiom = format!("{prefix}{}", item.axiom);
            }
            self.items.push(item);
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.subject,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for item in &self.items {
            writeln!(
                f,
                "  {} {}",
                if item.passed { "ok  " } else { "FAIL" },
                item.axiom
            )?;
            for w in &item.witnesses {
                writeln!(f, "       at {}: lhs = {}, rhs = {}", w.context, w.lhs, w.rhs)?;
            }
        }
        Ok(())
    }
}

/// Incremental builder for one [`AxiomItem`].
pub(crate) struct ItemCheck {
    axiom: String,
    passed: bool,
    witnesses: Vec<Witness>,
}

impl ItemCheck {
    pub fn new(axiom: impl Into<String>) -> Self {
        ItemCheck {
            axiom: axiom.into(),
            passed: true,
            witnesses: Vec::new(),
        }
    }

    /// Require two scalars to be equal; record a witness otherwise.
    pub fn expect_eq<F: FnOnce() -> String>(&mut self, context: F, lhs: &Scalar, rhs: &Scalar) {
        if lhs != rhs {
            self.fail(context(), lhs.to_string(), rhs.to_string());
        }
    }

    /// Require a condition; record a witness with free-form sides otherwise.
    pub fn expect<F: FnOnce() -> String>(
        &mut self,
        context: F,
        ok: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) {
        if !ok {
            self.fail(context(), lhs.into(), rhs.into());
        }
    }

    pub fn fail(&mut self, context: String, lhs: String, rhs: String) {
        self.passed = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { context, lhs, rhs });
        }
    }

    pub fn finish(self) -> AxiomItem {
        AxiomItem {
            axiom: self.axiom,
            passed: self.passed,
            witnesses: self.witnesses,
        }
    }
}
