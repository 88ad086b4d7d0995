//! JSON netlist interchange.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "ripple-1",
//!   "num_primary_inputs": 3,
//!   "gates": [
//!     {"id": "fa0", "gate": "TSG",
//!      "inputs": [{"input": 0}, {"input": 1}, {"const": 0}, {"input": 2}]}
//!   ],
//!   "primary_outputs": [{"port": {"gate": "fa0", "index": 2}},
//!                       {"port": {"gate": "fa0", "index": 3}}],
//!   "metadata": {"width": 1, "architecture": "ripple", "block": null}
//! }
//! ```
//!
//! Optional `shared_ports` (a list of `{"gate", "index"}`) declares gate
//! outputs allowed to drive several gate inputs. Optional `custom_gates`
//! (`{"name", "table"}` with output values indexed by input value) is only
//! accepted when custom gates are explicitly allowed.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::builders::is_standard;
use crate::error::{Error, Result};
use crate::gate::{GateSpec, StandardGate};
use crate::netlist::{
    Architecture, GateInstance, Netlist, NetlistMeta, NetlistParts, PortRef, Source,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistDocument {
    pub schema_version: u32,
    pub name: String,
    pub num_primary_inputs: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub custom_gates: Vec<CustomGateDoc>,
    pub gates: Vec<GateDoc>,
    pub primary_outputs: Vec<SourceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shared_ports: Vec<PortDoc>,
    pub metadata: MetadataDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomGateDoc {
    pub name: String,
    pub table: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDoc {
    pub id: String,
    pub gate: String,
    pub inputs: Vec<SourceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceDoc {
    Input(usize),
    Const(u8),
    Port(PortDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortDoc {
    pub gate: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetadataDoc {
    pub width: Option<usize>,
    pub architecture: String,
    pub block: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    pub allow_custom_gates: bool,
}

pub fn architecture_tag(arch: Architecture) -> (&'static str, Option<usize>) {
    match arch {
        Architecture::Custom => ("custom", None),
        Architecture::FullAdder => ("full-adder", None),
        Architecture::Ripple => ("ripple", None),
        Architecture::CarrySkip { block } => ("skip", Some(block)),
    }
}

fn parse_architecture(tag: &str, block: Option<usize>) -> Result<Architecture> {
    Ok(match (tag, block) {
        ("custom", None) => Architecture::Custom,
        ("full-adder", None) => Architecture::FullAdder,
        ("ripple", None) => Architecture::Ripple,
        ("skip", Some(block)) => Architecture::CarrySkip { block },
        ("skip", None) => return Err(Error::Document("architecture \"skip\" needs a block size".into())),
        (tag, Some(_)) if ["custom", "full-adder", "ripple"].contains(&tag) => {
            return Err(Error::Document(format!("architecture {tag:?} takes no block size")))
        }
        (tag, _) => return Err(Error::Document(format!("unknown architecture {tag:?}"))),
    })
}

pub fn to_document(netlist: &Netlist) -> NetlistDocument {
    let port_doc = |p: PortRef| PortDoc {
        gate: netlist.instances[p.gate].id.clone(),
        index: p.port,
    };
    let source_doc = |s: &Source| match *s {
        Source::Input(i) => SourceDoc::Input(i),
        Source::Const(b) => SourceDoc::Const(u8::from(b)),
        Source::Port(p) => SourceDoc::Port(port_doc(p)),
    };
    let mut custom_gates: Vec<CustomGateDoc> = Vec::new();
    for g in &netlist.instances {
        if !is_standard(&g.gate) && !custom_gates.iter().any(|c| c.name == g.gate.name()) {
            custom_gates.push(CustomGateDoc {
                name: g.gate.name().to_string(),
                table: g.gate.table().to_vec(),
            });
        }
    }
    let (architecture, block) = architecture_tag(netlist.meta.architecture);
    NetlistDocument {
        schema_version: SCHEMA_VERSION,
        name: netlist.name.clone(),
        num_primary_inputs: netlist.num_inputs,
        custom_gates,
        gates: netlist
            .instances
            .iter()
            .map(|g| GateDoc {
                id: g.id.clone(),
                gate: g.gate.name().to_string(),
                inputs: g.inputs.iter().map(source_doc).collect(),
            })
            .collect(),
        primary_outputs: netlist.outputs.iter().map(source_doc).collect(),
        shared_ports: netlist.shared_ports.iter().map(|&p| port_doc(p)).collect(),
        metadata: MetadataDoc {
            width: netlist.meta.width,
            architecture: architecture.to_string(),
            block,
        },
    }
}

pub fn from_document(doc: &NetlistDocument, opts: LoadOptions) -> Result<Netlist> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Document(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    if !doc.custom_gates.is_empty() && !opts.allow_custom_gates {
        return Err(Error::Document(
            "custom gates present; loading them must be explicitly allowed".into(),
        ));
    }
    let mut library: HashMap<&str, Arc<GateSpec>> = StandardGate::ALL
        .iter()
        .map(|g| (g.name(), g.spec()))
        .collect();
    for c in &doc.custom_gates {
        if library.contains_key(c.name.as_str()) {
            return Err(Error::Document(format!("gate name {:?} defined twice", c.name)));
        }
        let spec = GateSpec::from_values(c.name.clone(), c.table.clone())?;
        library.insert(&c.name, Arc::new(spec));
    }

    let index: HashMap<&str, usize> = doc
        .gates
        .iter()
        .enumerate()
        .map(|(i, g)| (g.id.as_str(), i))
        .collect();
    let port = |p: &PortDoc| -> Result<PortRef> {
        let gate = *index
            .get(p.gate.as_str())
            .ok_or_else(|| Error::Document(format!("unknown gate id {:?}", p.gate)))?;
        Ok(PortRef {
            gate,
            port: p.index,
        })
    };
    let source = |s: &SourceDoc| -> Result<Source> {
        Ok(match s {
            SourceDoc::Input(i) => Source::Input(*i),
            SourceDoc::Const(0) => Source::Const(false),
            SourceDoc::Const(1) => Source::Const(true),
            SourceDoc::Const(v) => return Err(Error::Document(format!("constant must be 0 or 1, got {v}"))),
            SourceDoc::Port(p) => Source::Port(port(p)?),
        })
    };

    let instances = doc
        .gates
        .iter()
        .map(|g| {
            let spec = library
                .get(g.gate.as_str())
                .ok_or_else(|| Error::Document(format!("unknown gate {:?}", g.gate)))?;
            Ok(GateInstance {
                id: g.id.clone(),
                gate: spec.clone(),
                inputs: g.inputs.iter().map(source).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let parts = NetlistParts {
        name: doc.name.clone(),
        num_inputs: doc.num_primary_inputs,
        instances,
        outputs: doc.primary_outputs.iter().map(source).collect::<Result<_>>()?,
        shared_ports: doc.shared_ports.iter().map(port).collect::<Result<_>>()?,
        meta: NetlistMeta {
            width: doc.metadata.width,
            architecture: parse_architecture(&doc.metadata.architecture, doc.metadata.block)?,
        },
    };
    Netlist::try_from_parts(parts)
}

pub fn to_json(netlist: &Netlist) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(netlist)).expect("document serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str, opts: LoadOptions) -> Result<Netlist> {
    let doc: NetlistDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    from_document(&doc, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_carry_skip, build_full_adder, build_ripple_carry};
    use crate::netlist::build;
    use crate::sim::truth_table;

    #[test]
    fn round_trip_preserves_structure() {
        for n in [
            build_full_adder(),
            build_ripple_carry(3).unwrap(),
            build_carry_skip(8, 4).unwrap(),
        ] {
            let back = from_json(&to_json(&n), LoadOptions::default()).unwrap();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn document_field_names() {
        let v: serde_json::Value =
            serde_json::from_str(&to_json(&build_full_adder())).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["num_primary_inputs"], 3);
        assert_eq!(v["gates"][0]["gate"], "TSG");
        assert_eq!(v["gates"][0]["inputs"][2], serde_json::json!({"const": 0}));
        assert_eq!(
            v["primary_outputs"][1],
            serde_json::json!({"port": {"gate": "fa0", "index": 3}})
        );
        assert_eq!(v["metadata"]["architecture"], "full-adder");
        assert!(v.get("custom_gates").is_none());
    }

    #[test]
    fn custom_gates_need_opt_in() {
        let not = Arc::new(GateSpec::from_values("NOT", vec![1, 0]).unwrap());
        let mut b = build(1);
        let g = b.add_gate(not, vec![Source::Input(0)]).unwrap();
        let n = b.set_primary_outputs(vec![Source::port(g, 0)]).unwrap();
        let json = to_json(&n);
        assert!(from_json(&json, LoadOptions::default()).is_err());
        let back = from_json(&json, LoadOptions { allow_custom_gates: true }).unwrap();
        assert_eq!(truth_table(&back).unwrap(), truth_table(&n).unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        let good = to_json(&build_full_adder());
        let cases = [
            good.replace("\"TSG\"", "\"TOFFOLI\""),
            good.replace("\"const\": 0", "\"const\": 2"),
            good.replace("\"schema_version\": 1", "\"schema_version\": 9"),
            good.replace("\"gate\": \"fa0\"", "\"gate\": \"nope\""),
            good.replace("full-adder", "adder"),
            good.replace("\"name\"", "\"nom\""),
            "{".to_string(),
        ];
        for bad in cases {
            assert!(
                matches!(from_json(&bad, LoadOptions::default()), Err(Error::Document(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn structural_errors_surface_from_validation() {
        let good = to_json(&build_ripple_carry(2).unwrap());
        // fa0 reads its own carry: a cycle
        let bad = good.replacen("{\n          \"input\": 4\n        }", "{\"port\": {\"gate\": \"fa0\", \"index\": 3}}", 1);
        assert_ne!(bad, good);
        let err = from_json(&bad, LoadOptions::default()).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
    }
}
