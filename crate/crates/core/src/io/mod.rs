//! Certificate and thrackle documents, and SVG figures.

mod document;
mod svg;

pub use document::{
    emit_certificate, emit_thrackles, parse_certificate, parse_thrackles, parse_any, AnyDocument,
    DocumentError, ThrackleSet, CERTIFICATE_SCHEMA, SCHEMA_VERSION, THRACKLE_SCHEMA,
};
pub use svg::{render_chords, render_polyomino, render_thrackle_chords, PALETTE};
