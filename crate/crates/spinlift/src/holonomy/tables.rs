//! Character tables of the nine holonomy groups, and decomposition of
//! holonomy characters into irreducibles.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use super::cyclotomic::CycValue;
use super::matrix::FiniteMatrixGroup;
use crate::clifford::rat;
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::{coset_enumerate, render_word, FpGroup, IntWord};

/// Which primitive cube root of unity the symbol `ξ` denotes in a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Xi {
    /// `e^{2πi/3}`
    TwoPiThirds,
    /// `e^{4πi/3}`
    FourPiThirds,
}

impl Xi {
    pub fn value(self) -> CycValue {
        match self {
            Xi::TwoPiThirds => CycValue::omega(),
            Xi::FourPiThirds => CycValue::omega().conj(),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Xi::TwoPiThirds => "ξ = e^{2πi/3}",
            Xi::FourPiThirds => "ξ = e^{4πi/3}",
        }
    }
}

struct TableSpec {
    name: &'static str,
    generators: &'static [&'static str],
    relators: &'static [&'static [(usize, i64)]],
    xi: Option<Xi>,
    classes: &'static [(&'static str, &'static [(usize, i64)])],
    rows: &'static [&'static [&'static str]],
}

const A: usize = 0;
const B: usize = 1;

const SPECS: &[TableSpec] = &[
    TableSpec {
        name: "1",
        generators: &[],
        relators: &[],
        xi: None,
        classes: &[("1", &[])],
        rows: &[&["1"]],
    },
    TableSpec {
        name: "C2",
        generators: &["ā"],
        relators: &[&[(A, 2)]],
        xi: None,
        classes: &[("1", &[]), ("ā", &[(A, 1)])],
        rows: &[&["1", "1"], &["1", "-1"]],
    },
    TableSpec {
        name: "C2×C2",
        generators: &["ā", "b̄"],
        relators: &[&[(A, 2)], &[(B, 2)], &[(A, -1), (B, -1), (A, 1), (B, 1)]],
        xi: None,
        classes: &[
            ("1", &[]),
            ("ā", &[(A, 1)]),
            ("b̄", &[(B, 1)]),
            ("āb̄", &[(A, 1), (B, 1)]),
        ],
        rows: &[
            &["1", "1", "1", "1"],
            &["1", "-1", "1", "-1"],
            &["1", "1", "-1", "-1"],
            &["1", "-1", "-1", "1"],
        ],
    },
    TableSpec {
        name: "C4",
        generators: &["ā"],
        relators: &[&[(A, 4)]],
        xi: None,
        classes: &[
            ("1", &[]),
            ("ā", &[(A, 1)]),
            ("ā²", &[(A, 2)]),
            ("ā³", &[(A, 3)]),
        ],
        rows: &[
            &["1", "1", "1", "1"],
            &["1", "-1", "1", "-1"],
            &["1", "i", "-1", "-i"],
            &["1", "-i", "-1", "i"],
        ],
    },
    TableSpec {
        name: "D8",
        generators: &["ā", "b̄"],
        relators: &[&[(A, 4)], &[(B, 2)], &[(A, 1), (B, 1), (A, 1), (B, 1)]],
        xi: None,
        classes: &[
            ("1", &[]),
            ("b̄", &[(B, 1)]),
            ("āb̄", &[(A, 1), (B, 1)]),
            ("ā²", &[(A, 2)]),
            ("ā", &[(A, 1)]),
        ],
        rows: &[
            &["1", "1", "1", "1", "1"],
            &["1", "-1", "1", "1", "-1"],
            &["1", "1", "-1", "1", "-1"],
            &["1", "-1", "-1", "1", "1"],
            &["2", "0", "0", "-2", "0"],
        ],
    },
    TableSpec {
        name: "C3",
        generators: &["ā"],
        relators: &[&[(A, 3)]],
        xi: Some(Xi::TwoPiThirds),
        classes: &[("1", &[]), ("ā", &[(A, 1)]), ("ā²", &[(A, 2)])],
        rows: &[&["1", "1", "1"], &["1", "ξ", "ξ̄"], &["1", "ξ̄", "ξ"]],
    },
    TableSpec {
        name: "S3",
        generators: &["ā", "b̄"],
        relators: &[&[(A, 2)], &[(B, 3)], &[(A, 1), (B, 1), (A, 1), (B, 1)]],
        xi: None,
        classes: &[("1", &[]), ("ā", &[(A, 1)]), ("b̄", &[(B, 1)])],
        rows: &[&["1", "1", "1"], &["1", "-1", "1"], &["2", "0", "-1"]],
    },
    TableSpec {
        name: "C6",
        generators: &["ā"],
        relators: &[&[(A, 6)]],
        xi: Some(Xi::FourPiThirds),
        classes: &[
            ("1", &[]),
            ("ā³", &[(A, 3)]),
            ("ā⁴", &[(A, 4)]),
            ("ā", &[(A, 1)]),
            ("ā²", &[(A, 2)]),
            ("ā⁵", &[(A, 5)]),
        ],
        rows: &[
            &["1", "1", "1", "1", "1", "1"],
            &["1", "-1", "1", "-1", "1", "-1"],
            &["1", "-1", "ξ", "-ξ", "ξ̄", "-ξ̄"],
            &["1", "-1", "ξ̄", "-ξ̄", "ξ", "-ξ"],
            &["1", "1", "ξ", "ξ", "ξ̄", "ξ̄"],
            &["1", "1", "ξ̄", "ξ̄", "ξ", "ξ"],
        ],
    },
    TableSpec {
        name: "D12",
        generators: &["ā", "b̄"],
        relators: &[&[(A, 2)], &[(B, 6)], &[(A, 1), (B, 1), (A, 1), (B, 1)]],
        xi: None,
        classes: &[
            ("1", &[]),
            ("ā", &[(A, 1)]),
            ("b̄³", &[(B, 3)]),
            ("b̄²", &[(B, 2)]),
            ("āb̄", &[(A, 1), (B, 1)]),
            ("b̄", &[(B, 1)]),
        ],
        rows: &[
            &["1", "1", "1", "1", "1", "1"],
            &["1", "-1", "-1", "1", "1", "-1"],
            &["1", "-1", "1", "1", "-1", "1"],
            &["1", "1", "-1", "1", "-1", "-1"],
            &["2", "0", "-2", "-1", "0", "1"],
            &["2", "0", "2", "-1", "0", "-1"],
        ],
    },
];

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub label: &'static str,
    pub representative: IntWord,
    pub size: usize,
    element: usize,
}

/// Character table of a holonomy group, with the class representatives given
/// as words in the table's own presentation.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub name: &'static str,
    pub presentation: FpGroup,
    pub xi: Option<Xi>,
    pub classes: Vec<ConjugacyClass>,
    pub symbols: Vec<Vec<&'static str>>,
    pub characters: Vec<Vec<CycValue>>,
    group: FiniteGroup,
}

fn symbol_value(s: &str, xi: Option<Xi>) -> CycValue {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let xi_val = || xi.expect("ξ used in a table without ξ").value();
    let v = match body {
        "i" => CycValue::i(),
        "ξ" => xi_val(),
        "ξ̄" => xi_val().conj(),
        n => CycValue::from_int(n.parse().expect("integer table entry")),
    };
    if neg {
        -&v
    } else {
        v
    }
}

impl CharacterTable {
    fn build(spec: &TableSpec) -> CharacterTable {
        let presentation = FpGroup::with_names(
            spec.generators.iter().map(|s| s.to_string()).collect(),
            spec.relators.iter().map(|r| r.to_vec()).collect(),
        );
        let cosets = coset_enumerate(&presentation, &[], 100).expect("small group");
        let group = FiniteGroup::from_coset_table(&cosets).expect("regular representation");
        let gens: Vec<usize> = (0..spec.generators.len())
            .map(|g| cosets.action(0, g))
            .collect();
        let conj = group.conjugacy_classes();
        let classes = spec
            .classes
            .iter()
            .map(|(label, w)| {
                let x = group.evaluate(&w.to_vec(), &gens);
                let size = conj.iter().find(|c| c.contains(&x)).map_or(0, Vec::len);
                ConjugacyClass {
                    label,
                    representative: w.to_vec(),
                    size,
                    element: x,
                }
            })
            .collect();
        let symbols: Vec<Vec<&'static str>> = spec.rows.iter().map(|r| r.to_vec()).collect();
        let characters = symbols
            .iter()
            .map(|r| r.iter().map(|s| symbol_value(s, spec.xi)).collect())
            .collect();
        CharacterTable {
            name: spec.name,
            presentation,
            xi: spec.xi,
            classes,
            symbols,
            characters,
            group,
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.characters
            .iter()
            .map(|c| c[0].to_integer().unwrap_or(0))
            .collect()
    }

    /// `⟨φ, ψ⟩ = (1/|F|) Σ |C| φ(C) conj(ψ(C))`.
    pub fn inner_product(&self, phi: &[CycValue], psi: &[CycValue]) -> CycValue {
        let mut acc = CycValue::default();
        for ((c, a), b) in self.classes.iter().zip(phi).zip(psi) {
            acc = &acc + &(a * &b.conj()).scale(&rat(c.size as i64, 1));
        }
        acc.scale(&rat(1, self.order() as i64))
    }

    /// Row and column orthogonality, the class equation and `Σ deg² = |F|`.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Invariant(format!(
                "character table {}: {what}",
                self.name
            )))
        };
        let k = self.classes.len();
        if self.characters.len() != k || self.characters.iter().any(|r| r.len() != k) {
            return fail("table is not square");
        }
        let conj = self.group.conjugacy_classes();
        let distinct: BTreeSet<usize> = self
            .classes
            .iter()
            .filter_map(|c| conj.iter().position(|cls| cls.contains(&c.element)))
            .collect();
        if distinct.len() != k || conj.len() != k {
            return fail("classes do not partition the group");
        }
        if self.degrees().iter().map(|d| d * d).sum::<i64>() != self.order() as i64 {
            return fail("sum of squared degrees differs from the group order");
        }
        for i in 0..k {
            for j in 0..k {
                let want = CycValue::from_int(i64::from(i == j));
                if self.inner_product(&self.characters[i], &self.characters[j]) != want {
                    return fail(&format!("rows {} and {} are not orthonormal", i + 1, j + 1));
                }
                let mut col = CycValue::default();
                for chi in &self.characters {
                    col = &col + &(&chi[i] * &chi[j].conj());
                }
                let want = if i == j {
                    CycValue::from_int((self.order() / self.classes[i].size) as i64)
                } else {
                    CycValue::default()
                };
                if col != want {
                    return fail(&format!(
                        "columns {} and {} are not orthogonal",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

pub fn character_tables() -> &'static [CharacterTable] {
    static TABLES: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    TABLES.get_or_init(|| SPECS.iter().map(CharacterTable::build).collect())
}

pub fn character_table(name: &str) -> Option<&'static CharacterTable> {
    character_tables().iter().find(|t| t.name == name)
}

/// Multiplicities of the irreducibles, in table order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition(pub Vec<u32>);

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| {
                if m == 1 {
                    format!("χ{}", i + 1)
                } else {
                    format!("{m}χ{}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

pub fn decompose_character(chi: &[CycValue], table: &CharacterTable) -> Result<Decomposition> {
    if chi.len() != table.classes.len() {
        return Err(Error::InvalidInput(format!(
            "class function has {} values, table {} has {} classes",
            chi.len(),
            table.name,
            table.classes.len()
        )));
    }
    table
        .characters
        .iter()
        .enumerate()
        .map(|(i, irr)| {
            let m = table.inner_product(chi, irr);
            match m.to_integer() {
                Some(n) if n >= 0 => Ok(n as u32),
                _ => Err(Error::InvalidInput(format!(
                    "multiplicity of χ{} in the character is {m}, not a non-negative integer",
                    i + 1
                ))),
            }
        })
        .collect::<Result<Vec<u32>>>()
        .map(Decomposition)
}

/// Tuples of elements of `group` satisfying the table's presentation and
/// generating `group`.
pub fn table_matchings(group: &FiniteGroup, table: &CharacterTable) -> Vec<Vec<usize>> {
    let k = table.presentation.generators();
    let mut out = Vec::new();
    if group.order() != table.order() {
        return out;
    }
    let mut images = vec![0; k];
    fn rec(
        group: &FiniteGroup,
        table: &CharacterTable,
        i: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == images.len() {
            if table
                .presentation
                .relators()
                .iter()
                .all(|r| group.evaluate(r, images) == 0)
                && group.generated(images).len() == group.order()
            {
                out.push(images.clone());
            }
            return;
        }
        for x in 0..group.order() {
            images[i] = x;
            rec(group, table, i + 1, images, out);
        }
    }
    rec(group, table, 0, &mut images, &mut out);
    out
}

/// Traces on the table's classes, with table generators sent to `matching`.
pub fn character_on_table(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    matching: &[usize],
) -> Vec<CycValue> {
    table
        .classes
        .iter()
        .map(|c| {
            CycValue::from_int(
                group.elements()[group.table().evaluate(&c.representative, matching)].trace(),
            )
        })
        .collect()
}

/// Decomposes the holonomy character. The record's generators are matched to the
/// table's in order when they satisfy its presentation; otherwise every matching is
/// tried and all must agree.
pub fn decompose_representation(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
) -> Result<Decomposition> {
    let matchings = table_matchings(group.table(), table);
    if matchings.is_empty() {
        return Err(Error::InvalidInput(format!(
            "holonomy group of order {} does not satisfy the presentation of {}",
            group.order(),
            table.name
        )));
    }
    let own = group.generator_indices();
    if matchings.contains(&own) {
        return decompose_character(&character_on_table(group, table, &own), table);
    }
    let found: BTreeSet<Decomposition> = matchings
        .iter()
        .map(|m| decompose_character(&character_on_table(group, table, m), table))
        .collect::<Result<_>>()?;
    if found.len() == 1 {
        Ok(found.into_iter().next().expect("one element"))
    } else {
        let all: Vec<String> = found.iter().map(Decomposition::to_string).collect();
        Err(Error::InvalidInput(format!(
            "decomposition depends on how generators are matched to {}: {}",
            table.name,
            all.join(", ")
        )))
    }
}

impl CharacterTable {
    /// Irreducible values as printed, e.g. `-ξ̄`.
    pub fn symbol(&self, row: usize, col: usize) -> &'static str {
        self.symbols[row][col]
    }

    /// Markdown table: one column per class, headed by its representative
    /// and size, one row per irreducible.
    pub fn to_markdown(&self) -> String {
        let names = self.presentation.names();
        let relators: Vec<String> = self
            .presentation
            .relators()
            .iter()
            .map(|r| render_word(r, names))
            .collect();
        let mut out = format!("## {}\n\n", self.name);
        if !names.is_empty() {
            out += &format!(
                "⟨{} | {}⟩, order {}\n\n",
                names.join(", "),
                relators.join(", "),
                self.order()
            );
        }
        if let Some(xi) = self.xi {
            out += &format!("{}\n\n", xi.describe());
        }
        let header: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{} ({})", c.label, c.size))
            .collect();
        out += &format!("| | {} |\n", header.join(" | "));
        out += &format!("|---|{}\n", "---|".repeat(header.len()));
        for (i, row) in self.symbols.iter().enumerate() {
            out += &format!("| χ{} | {} |\n", i + 1, row.join(" | "));
        }
        out
    }
}

/// Every table, in the order of [`character_tables`].
pub fn character_tables_markdown() -> String {
    let mut out = String::from(
        "# Character tables\n\nClass columns show a representative word and the class size.\n",
    );
    for t in character_tables() {
        out += "\n";
        out += &t.to_markdown();
    }
    out
}
