//! PD file format.
//!
//! A PD file is one JSON object:
//!
//! ```json
//! {
//!   "arc_count": 3,
//!   "crossings": [[1, 2, 3], [2, 3, 1], [3, 1, 2]],
//!   "free_components": 0,
//!   "marked_sites": [{ "arcs": [1, 2], "orientation": "parallel" }]
//! }
//! ```
//!
//! Each crossing is `[over, under_in, under_out]`. `free_components` and
//! `marked_sites` may be omitted. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use super::{Crossing, LinkDiagram, MoveSite};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdFile {
    arc_count: usize,
    crossings: Vec<[usize; 3]>,
    #[serde(default)]
    free_components: usize,
    #[serde(default)]
    marked_sites: Vec<MoveSite>,
}

pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let f: PdFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("PD file: {e}")))?;
    let crossings = f.crossings.iter().map(|c| Crossing::new(c[0], c[1], c[2])).collect();
    LinkDiagram::new(f.arc_count, crossings, f.free_components, f.marked_sites)
}

pub fn to_pd_string(d: &LinkDiagram) -> String {
    // one crossing per line; serde's pretty printer would put every number on its own
    let crossings: Vec<String> =
        d.crossings().iter().map(|c| format!("    [{}, {}, {}]", c.over, c.under_in, c.under_out)).collect();
    let sites = serde_json::to_string(d.marked_sites()).expect("PD serialization cannot fail");
    let crossings = if crossings.is_empty() { "[]".to_string() } else { format!("[\n{}\n  ]", crossings.join(",\n")) };
    format!(
        "{{\n  \"arc_count\": {},\n  \"crossings\": {},\n  \"free_components\": {},\n  \"marked_sites\": {}\n}}",
        d.arc_count(),
        crossings,
        d.free_components(),
        sites
    )
}
