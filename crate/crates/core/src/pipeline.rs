//! End-to-end update of one target: normalize, apply, denormalize.

use thiserror::Error;

use crate::engine::{self, SkipReason, UpdateReport};
use crate::jast::{self, lexer, CompilationUnit, ParseError};
use crate::normal::{self, DenormError, NormSkip};
use crate::patchgen::{self, GenOptions, PatchGenError, SemanticPatch};
use crate::sigmap::{self, ApiMapping};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpdateError {
    #[error("patch rewrites `{patch}` but the mapping's deprecated API is `{mapping}`")]
    AnchorMismatch { patch: String, mapping: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("cannot inline temporaries: {0}")]
    Denormalize(#[from] DenormError),
}

#[derive(Debug, Clone)]
pub struct UpdateOutcome {
    pub text: String,
    pub report: UpdateReport,
}

/// Generate a patch from example source text.
pub fn generate_from_text(
    example: &str,
    mapping: &ApiMapping,
    opts: GenOptions,
) -> Result<SemanticPatch, PatchGenError> {
    patchgen::generate_patch(&jast::parse(example)?, mapping, opts)
}

/// Apply `patch` to `unit`. Report lines refer to the input text.
pub fn update_unit(
    patch: &SemanticPatch,
    mapping: &ApiMapping,
    unit: &CompilationUnit,
    file: &str,
) -> Result<UpdateOutcome, UpdateError> {
    let dep = &mapping.deprecated;
    match patch.anchor() {
        Some((name, arity)) if name == dep.method_name && arity == dep.arity() => {}
        other => {
            let patch = other.map_or("nothing".to_string(), |(n, a)| format!("{n}/{a}"));
            return Err(UpdateError::AnchorMismatch { patch, mapping: format!("{}/{}", dep.method_name, dep.arity()) });
        }
    }
    let sites = sigmap::find_invocations(unit, dep);
    let (normalized, map) = normal::normalize(unit, &sites, mapping)?;
    let applied = engine::apply_patch(patch, &normalized, file);
    let mut report = applied.report;
    for s in &mut report.skipped {
        let start = map.original_offset(s.span.start);
        let end = map.original_offset(s.span.end);
        s.span = jast::Span::new(start, end.max(start));
        s.line = lexer::line_of(&unit.text, start);
        if map.skipped.iter().any(|(sp, k)| sp.start == start && *k == NormSkip::NonStatementContext) {
            s.reason = SkipReason::NonStatementContext;
        }
    }
    if report.sites_updated == 0 {
        return Ok(UpdateOutcome { text: unit.text.clone(), report });
    }
    let out = normal::denormalize(&applied.unit, &map, &applied.patch_temps)?;
    Ok(UpdateOutcome { text: out.text, report })
}

/// Parse and update target source text.
pub fn update_text(
    patch: &SemanticPatch,
    mapping: &ApiMapping,
    text: &str,
    file: &str,
) -> Result<UpdateOutcome, UpdateError> {
    update_unit(patch, mapping, &jast::parse(text)?, file)
}
