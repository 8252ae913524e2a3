use crate::arith::Matrix;

use super::bfs::{bfs_group_order, BfsOutcome};
use super::forms::{
    absolutely_irreducible, invariant_bilinear_form, invariant_sesquilinear_form, trace_field, FormKind, TraceField,
};
use super::goursat::sl_order;
use super::triple::MonodromyTriple;

pub const DEFAULT_BFS_CAP: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    FullSl,
    Symplectic,
    Unitary,
    SubfieldDefined,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FullSl => "full-SL",
            Verdict::Symplectic => "symplectic",
            Verdict::Unitary => "unitary",
            Verdict::SubfieldDefined => "subfield-defined",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BfsOrder,
    FormSolve,
    TraceField,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BfsOrder => "bfs-order",
            Method::FormSolve => "form-solve",
            Method::TraceField => "trace-field",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Form(Matrix),
    TraceField(TraceField),
    Order(u64),
    None,
}

#[derive(Clone, Debug)]
pub struct ImageClassification {
    pub verdict: Verdict,
    pub method: Method,
    pub certificate: Certificate,
    pub bfs: Option<BfsOutcome>,
    pub notes: Vec<String>,
}

impl ImageClassification {
    fn new(verdict: Verdict, method: Method, certificate: Certificate) -> Self {
        Self { verdict, method, certificate, bfs: None, notes: Vec::new() }
    }
}

/// Exclusion route: irreducibility, then symplectic, unitary and subfield
/// obstructions, then full SL_n(q) confirmed by enumeration when it fits
/// under `cap`.
///
/// For n = 2 every SL_2 element preserves an alternating form (Sp_2 = SL_2),
/// so that form is not an obstruction and the symplectic step is skipped.
pub fn classify_image(t: &MonodromyTriple, cap: u64) -> ImageClassification {
    let gens = t.generators();
    let q = t.field.order();
    if !absolutely_irreducible(&gens) {
        let mut c = ImageClassification::new(Verdict::Undetermined, Method::FormSolve, Certificate::None);
        c.notes.push("generators are not absolutely irreducible".into());
        return c;
    }
    let bil = invariant_bilinear_form(&gens);
    if t.n > 2 {
        if let Some(m) = bil.alternating {
            return ImageClassification::new(Verdict::Symplectic, Method::FormSolve, Certificate::Form(m));
        }
        if let Some(m) = bil.form {
            let mut c = ImageClassification::new(Verdict::Undetermined, Method::FormSolve, Certificate::Form(m));
            c.notes.push(format!("invariant bilinear form of kind {:?}", bil.kind.unwrap_or(FormKind::General)));
            return c;
        }
    }
    let mut notes = Vec::new();
    if t.n == 2 {
        notes.push("n = 2: the invariant alternating form is SL_2's own (Sp_2 = SL_2)".into());
    }
    if let Some(m) = invariant_sesquilinear_form(&gens).form() {
        let mut c = ImageClassification::new(Verdict::Unitary, Method::FormSolve, Certificate::Form(m.clone()));
        c.notes = notes;
        return c;
    }
    let tf = trace_field(&gens, 3);
    if tf.is_proper() {
        let p = t.field.characteristic();
        let sub_q = p.checked_pow(tf.degree);
        let mut c = ImageClassification::new(Verdict::SubfieldDefined, Method::TraceField, Certificate::TraceField(tf));
        // Record the enumerated order as supporting evidence when it is cheap.
        if sub_q.and_then(|sq| sl_order(t.n as u32, sq)).is_some_and(|o| o <= cap as u128) {
            c.bfs = Some(bfs_group_order(t, cap));
        }
        c.notes = notes;
        return c;
    }
    match sl_order(t.n as u32, q) {
        Some(order) if order <= cap as u128 => {
            let bfs = bfs_group_order(t, cap);
            let mut c = if bfs.complete && bfs.order as u128 == order {
                ImageClassification::new(Verdict::FullSl, Method::BfsOrder, Certificate::Order(bfs.order))
            } else {
                let mut c =
                    ImageClassification::new(Verdict::Undetermined, Method::BfsOrder, Certificate::Order(bfs.order));
                c.notes.push(format!("exclusions passed but BFS order {} != |SL_n(q)| = {order}", bfs.order));
                c
            };
            c.bfs = Some(bfs);
            c.notes.extend(notes);
            c
        }
        _ => {
            let mut c = ImageClassification::new(Verdict::FullSl, Method::FormSolve, Certificate::None);
            c.notes = notes;
            c.notes.push("order not enumerated: |SL_n(q)| exceeds the BFS cap".into());
            c
        }
    }
}
