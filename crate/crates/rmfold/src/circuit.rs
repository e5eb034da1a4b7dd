//! Gate layers, circuits, and the fold-transversal layer builders.
//!
//! A layer is a set of physical gates with pairwise disjoint supports, so a
//! circuit's depth is its layer count. The swap-type layer for an involution
//! `pi` applies `SW` across every moved pair; the phase-type layer applies
//! `CZ` across moved pairs and `S` on fixed points.
//!
//! Wire format (bit-exact):
//! `{"m": int, "layers": [{"gates": [{"g": name, "q": [positions]}]}], "meta": {...}}`
//! with gate names `"H","S","SDG","SW","CX","CZ","CZ00","X","Z"` and 0-based
//! positions; layers apply left to right in time order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f2::Permutation;
use crate::pauli::{conjugate_gate, Gate, PhasedPauli};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GateLayer {
    gates: Vec<Gate>,
}

impl GateLayer {
    pub fn empty() -> Self {
        GateLayer { gates: vec![] }
    }

    /// Validates that gate supports are pairwise disjoint.
    pub fn new(gates: Vec<Gate>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &gates {
            for q in g.qubits() {
                if !seen.insert(q) {
                    return Err(Error::OverlappingSupports(q));
                }
            }
        }
        Ok(GateLayer { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn inverse(&self) -> GateLayer {
        GateLayer {
            gates: self.gates.iter().map(Gate::inverse).collect(),
        }
    }

    pub fn conjugate(&self, p: &mut PhasedPauli) {
        for g in &self.gates {
            conjugate_gate(p, g);
        }
    }
}

/// Ordered list of constant-depth layers on `2^m` qubits.
#[derive(Clone, PartialEq, Debug)]
pub struct Circuit {
    m: usize,
    layers: Vec<GateLayer>,
    meta: serde_json::Map<String, serde_json::Value>,
}

impl Circuit {
    pub fn empty(m: usize) -> Self {
        Circuit {
            m,
            layers: vec![],
            meta: Default::default(),
        }
    }

    pub fn from_layers(m: usize, layers: Vec<GateLayer>) -> Result<Self> {
        let c = Circuit {
            m,
            layers,
            meta: Default::default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_qubits(&self) -> usize {
        1 << self.m
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[GateLayer] {
        &self.layers
    }

    pub fn meta(&self) -> &serde_json::Map<String, serde_json::Value> {
        &self.meta
    }

    pub fn set_meta(&mut self, key: &str, value: serde_json::Value) {
        self.meta.insert(key.to_string(), value);
    }

    pub fn with_action_label(mut self, label: &str) -> Self {
        self.set_meta("action", serde_json::Value::String(label.to_string()));
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_qubits();
        for layer in &self.layers {
            let mut seen = std::collections::BTreeSet::new();
            for g in layer.gates() {
                for q in g.qubits() {
                    if q >= n {
                        return Err(Error::PositionOutOfRange { position: q, n });
                    }
                    if !seen.insert(q) {
                        return Err(Error::OverlappingSupports(q));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn push_layer(&mut self, layer: GateLayer) {
        self.layers.push(layer);
    }

    /// Time-ordered concatenation: `self` first, then `other`.
    pub fn then(mut self, other: &Circuit) -> Circuit {
        assert_eq!(self.m, other.m, "circuit sizes differ");
        self.layers.extend(other.layers.iter().cloned());
        self
    }

    /// Reverse layer order and invert each gate (`S <-> SDG`).
    pub fn inverse(&self) -> Circuit {
        Circuit {
            m: self.m,
            layers: self.layers.iter().rev().map(GateLayer::inverse).collect(),
            meta: Default::default(),
        }
    }

    /// `U p U^dag` with layers applied left to right in time order.
    pub fn conjugate(&self, p: &PhasedPauli) -> PhasedPauli {
        let mut out = p.clone();
        for layer in &self.layers {
            layer.conjugate(&mut out);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        let c: Circuit =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("circuit JSON: {e}")))?;
        c.validate()?;
        Ok(c)
    }
}

/// Swap-type fold-transversal layer `U_S(pi)`: one layer of `SW` on each
/// moved pair; fixed points idle. Requires `pi^2 = e`.
pub fn fold_swap(m: usize, pi: &Permutation) -> Result<Circuit> {
    check_involution(m, pi)?;
    let gates = pi
        .moved_pairs()
        .into_iter()
        .map(|(p, q)| Gate::Sw(p, q))
        .collect();
    Ok(Circuit {
        m,
        layers: vec![GateLayer { gates }],
        meta: Default::default(),
    })
}

/// Phase-type fold-transversal layer `U_P(pi)`: `CZ` across moved pairs and
/// `S` on fixed points. Requires `pi^2 = e`.
pub fn fold_phase(m: usize, pi: &Permutation) -> Result<Circuit> {
    check_involution(m, pi)?;
    let mut gates: Vec<Gate> = pi
        .moved_pairs()
        .into_iter()
        .map(|(p, q)| Gate::Cz(p, q))
        .collect();
    gates.extend(pi.fixed_points().into_iter().map(Gate::S));
    Ok(Circuit {
        m,
        layers: vec![GateLayer { gates }],
        meta: Default::default(),
    })
}

/// One layer of `H` on every qubit.
pub fn transversal_h(m: usize) -> Circuit {
    let n = 1usize << m;
    Circuit {
        m,
        layers: vec![GateLayer {
            gates: (0..n).map(Gate::H).collect(),
        }],
        meta: Default::default(),
    }
}

fn check_involution(m: usize, pi: &Permutation) -> Result<()> {
    if pi.len() != (1 << m) {
        return Err(Error::MMismatch {
            circuit_m: m,
            code_m: pi.len().trailing_zeros() as usize,
        });
    }
    match pi.involution_defect() {
        None => Ok(()),
        Some(p) => Err(Error::NotInvolutive(p)),
    }
}

// ---- serde: exact wire format ----

#[derive(Serialize, Deserialize)]
struct RawGate {
    g: String,
    q: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawLayer {
    gates: Vec<RawGate>,
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    m: usize,
    layers: Vec<RawLayer>,
    #[serde(default)]
    meta: serde_json::Map<String, serde_json::Value>,
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawCircuit {
            m: self.m,
            layers: self
                .layers
                .iter()
                .map(|layer| RawLayer {
                    gates: layer
                        .gates
                        .iter()
                        .map(|g| RawGate {
                            g: g.name().to_string(),
                            q: g.qubits(),
                        })
                        .collect(),
                })
                .collect(),
            meta: self.meta.clone(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCircuit::deserialize(deserializer)?;
        let mut layers = Vec::with_capacity(raw.layers.len());
        for layer in raw.layers {
            let mut gates = Vec::with_capacity(layer.gates.len());
            for rg in layer.gates {
                let gate = Gate::from_name(&rg.g, &rg.q).ok_or_else(|| {
                    D::Error::custom(format!("unknown gate {:?} on qubits {:?}", rg.g, rg.q))
                })?;
                gates.push(gate);
            }
            layers.push(GateLayer { gates });
        }
        Ok(Circuit {
            m: raw.m,
            layers,
            meta: raw.meta,
        })
    }
}
