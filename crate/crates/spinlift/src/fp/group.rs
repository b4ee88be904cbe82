use std::fmt;

/// Word over generators `0..k` with integer exponents.
pub type IntWord = Vec<(usize, i64)>;

pub fn invert_word(w: &IntWord) -> IntWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Merges adjacent powers of the same generator and drops zero exponents.
pub fn reduce_word(w: &IntWord) -> IntWord {
    let mut out: IntWord = Vec::with_capacity(w.len());
    for &(g, e) in w {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

pub fn render_word(w: &IntWord, names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&(g, e)| match e {
            1 => names[g].clone(),
            _ => format!("{}^{}", names[g], e),
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// Finitely presented group with numeric exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroup {
    generators: usize,
    relators: Vec<IntWord>,
    names: Vec<String>,
}

impl FpGroup {
    pub fn new(generators: usize, relators: Vec<IntWord>) -> Self {
        let names = (0..generators).map(|i| format!("x{}", i + 1)).collect();
        FpGroup {
            generators,
            relators,
            names,
        }
    }

    pub fn with_names(names: Vec<String>, relators: Vec<IntWord>) -> Self {
        FpGroup {
            generators: names.len(),
            relators,
            names,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[IntWord] {
        &self.relators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| render_word(r, &self.names))
            .collect();
        write!(f, "⟨{} | {}⟩", self.names.join(", "), rels.join(", "))
    }
}
