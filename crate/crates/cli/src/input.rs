//! The line-oriented `.wb` workbench format: one or more `ring` blocks, each
//! declaring a field, variables, an ideal, modules and sequences.

use std::fmt;
use std::sync::Arc;

use nagata_core::groebner::FreeModuleElement;
use nagata_core::modpres::{ModulePresentation, PolyRingPresentation, RingSequence};
use nagata_core::poly::{Field, OrderKind, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBlock {
    pub name: String,
    pub gens: usize,
    /// Relation columns, each with `gens` entries in canonical text.
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceBlock {
    pub name: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingBlock {
    pub name: String,
    pub field: Field,
    pub order: OrderKind,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub modules: Vec<ModuleBlock>,
    pub sequences: Vec<SequenceBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkbenchInput {
    pub rings: Vec<RingBlock>,
}

/// A ring block with every presentation built.
pub struct BuiltRing {
    pub name: String,
    pub ring: Arc<PolyRingPresentation>,
    pub modules: Vec<(String, ModulePresentation)>,
    pub sequences: Vec<(String, RingSequence)>,
}

fn err(line: usize, message: impl Into<String>) -> InputError {
    InputError { line, message: message.into() }
}

fn split_list(text: &str) -> Vec<&str> {
    let t = text.trim();
    if t.is_empty() {
        return Vec::new();
    }
    t.split(',').map(str::trim).collect()
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// Partially read ring block: the polynomial ring exists once `vars` is seen.
struct Pending {
    block: RingBlock,
    poly: Option<Arc<PolyRing>>,
    start: usize,
}

impl Pending {
    fn poly(&mut self, line: usize) -> Result<Arc<PolyRing>, InputError> {
        if let Some(p) = &self.poly {
            return Ok(p.clone());
        }
        if self.block.vars.is_empty() {
            return Err(err(line, "`vars` must come before polynomials"));
        }
        let p = PolyRing::new(self.block.field, &self.block.vars, self.block.order).map_err(|e| err(line, e.to_string()))?;
        self.poly = Some(p.clone());
        Ok(p)
    }

    fn polys(&mut self, line: usize, text: &str) -> Result<Vec<String>, InputError> {
        let poly = self.poly(line)?;
        split_list(text)
            .into_iter()
            .map(|s| poly.parse(s).map(|p| p.to_string()).map_err(|e| err(line, format!("`{s}`: {e}"))))
            .collect()
    }
}

fn rest_after(line: &str, words: usize) -> &str {
    let mut rest = line.trim_start();
    for _ in 0..words {
        rest = rest.trim_start();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        rest = &rest[end..];
    }
    rest.trim()
}

/// Parses a workbench file. `field` overrides every block's field.
pub fn parse(text: &str, field: Option<Field>) -> Result<WorkbenchInput, InputError> {
    let mut rings: Vec<RingBlock> = Vec::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let key = words.next().expect("nonempty line");
        if key == "ring" {
            if cur.is_some() {
                return Err(err(line_no, "nested `ring` block; close the previous one with `end`"));
            }
            let name = words.next().ok_or_else(|| err(line_no, "`ring` needs a name"))?;
            if !valid_name(name) || words.next().is_some() {
                return Err(err(line_no, format!("bad ring name `{}`", rest_after(line, 1))));
            }
            if rings.iter().any(|r| r.name == name) {
                return Err(err(line_no, format!("duplicate ring `{name}`")));
            }
            cur = Some(Pending {
                block: RingBlock {
                    name: name.to_string(),
                    field: field.unwrap_or(Field::Rational),
                    order: OrderKind::Grevlex,
                    vars: Vec::new(),
                    ideal: Vec::new(),
                    modules: Vec::new(),
                    sequences: Vec::new(),
                },
                poly: None,
                start: line_no,
            });
            continue;
        }
        let pending = cur.as_mut().ok_or_else(|| err(line_no, format!("`{key}` outside a `ring` block")))?;
        match key {
            "end" => {
                let p = cur.take().expect("open block");
                if p.block.vars.is_empty() {
                    return Err(err(p.start, format!("ring `{}` declares no variables", p.block.name)));
                }
                rings.push(p.block);
            }
            "field" => {
                if pending.poly.is_some() {
                    return Err(err(line_no, "`field` must come before polynomials"));
                }
                let f = Field::parse(rest_after(line, 1)).map_err(|e| err(line_no, e.to_string()))?;
                if field.is_none() {
                    pending.block.field = f;
                }
            }
            "order" => {
                if pending.poly.is_some() {
                    return Err(err(line_no, "`order` must come before polynomials"));
                }
                pending.block.order = OrderKind::parse(rest_after(line, 1)).map_err(|e| err(line_no, e.to_string()))?;
            }
            "vars" => {
                if !pending.block.vars.is_empty() {
                    return Err(err(line_no, "`vars` given twice"));
                }
                let vs: Vec<String> = words.map(str::to_string).collect();
                if vs.is_empty() {
                    return Err(err(line_no, "`vars` needs at least one variable"));
                }
                pending.block.vars = vs;
                pending.poly(line_no)?;
            }
            "ideal" => {
                let ps = pending.polys(line_no, rest_after(line, 1))?;
                pending.block.ideal.extend(ps.into_iter().filter(|p| p != "0"));
            }
            "module" => {
                let name = words.next().ok_or_else(|| err(line_no, "`module` needs a name"))?;
                if !valid_name(name) || pending.block.modules.iter().any(|m| m.name == name) {
                    return Err(err(line_no, format!("bad or duplicate module name `{name}`")));
                }
                let kind = words.next().ok_or_else(|| err(line_no, "`module` needs a kind: free, cyclic, rank or zero"))?;
                let args = rest_after(line, 3);
                let block = match kind {
                    "free" | "rank" => {
                        let g = parse_count(line_no, args)?;
                        ModuleBlock { name: name.into(), gens: g, relations: Vec::new() }
                    }
                    "cyclic" => {
                        let ps = pending.polys(line_no, args)?;
                        ModuleBlock { name: name.into(), gens: 1, relations: ps.into_iter().map(|p| vec![p]).collect() }
                    }
                    "zero" => {
                        if !args.is_empty() {
                            return Err(err(line_no, "`zero` takes no arguments"));
                        }
                        ModuleBlock { name: name.into(), gens: 0, relations: Vec::new() }
                    }
                    other => return Err(err(line_no, format!("unknown module kind `{other}`"))),
                };
                pending.block.modules.push(block);
            }
            "relation" => {
                let ps = pending.polys(line_no, rest_after(line, 1))?;
                let m = pending
                    .block
                    .modules
                    .last_mut()
                    .ok_or_else(|| err(line_no, "`relation` before any `module`"))?;
                if ps.len() != m.gens {
                    return Err(err(line_no, format!("relation has {} entries, module `{}` has {} generators", ps.len(), m.name, m.gens)));
                }
                m.relations.push(ps);
            }
            "sequence" => {
                let name = words.next().ok_or_else(|| err(line_no, "`sequence` needs a name"))?;
                if !valid_name(name) || pending.block.sequences.iter().any(|s| s.name == name) {
                    return Err(err(line_no, format!("bad or duplicate sequence name `{name}`")));
                }
                let ps = pending.polys(line_no, rest_after(line, 2))?;
                pending.block.sequences.push(SequenceBlock { name: name.into(), elements: ps });
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(p) = cur {
        return Err(err(p.start, format!("ring `{}` is missing `end`", p.block.name)));
    }
    if rings.is_empty() {
        return Err(err(1, "no `ring` block"));
    }
    Ok(WorkbenchInput { rings })
}

fn parse_count(line: usize, s: &str) -> Result<usize, InputError> {
    s.parse().map_err(|_| err(line, format!("expected a generator count, got `{s}`")))
}

fn field_text(f: Field) -> String {
    match f {
        Field::Rational => "q".into(),
        Field::Prime(p) => format!("p:{p}"),
    }
}

impl fmt::Display for WorkbenchInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "ring {}", r.name)?;
            writeln!(f, "  field {}", field_text(r.field))?;
            writeln!(f, "  order {}", r.order.name())?;
            writeln!(f, "  vars {}", r.vars.join(" "))?;
            if !r.ideal.is_empty() {
                writeln!(f, "  ideal {}", r.ideal.join(", "))?;
            }
            for m in &r.modules {
                if m.gens == 0 {
                    writeln!(f, "  module {} zero", m.name)?;
                    continue;
                }
                writeln!(f, "  module {} rank {}", m.name, m.gens)?;
                for col in &m.relations {
                    writeln!(f, "    relation {}", col.join(", "))?;
                }
            }
            for s in &r.sequences {
                writeln!(f, "  sequence {} {}", s.name, s.elements.join(", "))?;
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

impl RingBlock {
    pub fn build(&self) -> nagata_core::Result<BuiltRing> {
        let poly = PolyRing::new(self.field, &self.vars, self.order)?;
        let parse_all = |ps: &[String]| -> nagata_core::Result<Vec<Polynomial>> { ps.iter().map(|s| poly.parse(s)).collect() };
        let ring = PolyRingPresentation::new(&poly, &parse_all(&self.ideal)?)?;
        let mut modules = Vec::new();
        for m in &self.modules {
            let mut rels = Vec::new();
            for col in &m.relations {
                rels.push(FreeModuleElement::from_components(&poly, &parse_all(col)?)?);
            }
            let pres = if m.gens == 0 { ModulePresentation::zero(&ring) } else { ModulePresentation::new(&ring, m.gens, rels)? };
            modules.push((m.name.clone(), pres));
        }
        let mut sequences = Vec::new();
        for s in &self.sequences {
            sequences.push((s.name.clone(), RingSequence::new(&ring, &parse_all(&s.elements)?)?));
        }
        Ok(BuiltRing { name: self.name.clone(), ring, modules, sequences })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# two blocks
ring line
  vars x
  module R free 1
  module K cyclic x
  sequence s x
end
ring plane
  field p:7
  vars x y
  ideal x*y, 0
  module P rank 2
    relation x, y
  sequence e
end
";

    #[test]
    fn parses_blocks() {
        let w = parse(SAMPLE, None).unwrap();
        assert_eq!(w.rings.len(), 2);
        assert_eq!(w.rings[0].modules[1].relations, vec![vec!["x".to_string()]]);
        assert_eq!(w.rings[1].field, Field::Prime(7));
        assert_eq!(w.rings[1].ideal, ["x*y"]);
        assert_eq!(w.rings[1].modules[0].relations, vec![vec!["x".to_string(), "y".to_string()]]);
        assert!(w.rings[1].sequences[0].elements.is_empty());
        let b = w.rings[1].build().unwrap();
        assert_eq!(b.modules[0].1.gens(), 2);
    }

    #[test]
    fn print_parse_round_trip() {
        let w = parse(SAMPLE, None).unwrap();
        let printed = w.to_string();
        let again = parse(&printed, None).unwrap();
        assert_eq!(again, w);
        assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn field_override() {
        let w = parse(SAMPLE, Some(Field::Prime(5))).unwrap();
        assert!(w.rings.iter().all(|r| r.field == Field::Prime(5)));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse("ring r\n vars x\n ideal x+\nend\n", None).unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse("ring r\n vars x\n module M rank 2\n relation x\nend\n", None).unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse("vars x\n", None).unwrap_err().line, 1);
        assert_eq!(parse("ring r\n vars x\n", None).unwrap_err().line, 1);
        assert!(parse("", None).is_err());
    }
}
