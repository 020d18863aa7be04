//! Line-oriented text format for marked categories.
//!
//! ```text
//! OBJECTS
//! X Y
//! MORPHISMS
//! idX X X
//! idY Y Y
//! f X Y
//! COMP
//! f idX f
//! ...
//! IDENT
//! X idX
//! Y idY
//! A
//! *
//! G
//! idX idY
//! INTERIOR
//! X
//! COINTERIOR
//! Y
//! ```
//!
//! `#` starts a comment. `A` and `G` list their members (`*` means all
//! morphisms for `A` and all isomorphisms for `G`); each `INTERIOR` and
//! `COINTERIOR` line names an object followed by generators of its subgroup.

use std::collections::HashMap;
use std::fmt::Write;

use super::{CatBuilder, FinCat, MorId, MorSet, ObjId};
use crate::error::{Error, Result};

/// A category with its markings `A`, `G`, `I`, `I°`.
#[derive(Clone, Debug)]
pub struct MarkedCat {
    pub cat: FinCat,
    pub a: MorSet,
    pub g: MorSet,
    pub interior: Vec<Vec<MorId>>,
    pub cointerior: Vec<Vec<MorId>>,
}

impl MarkedCat {
    /// Default markings: `A` everything, `G` identities, trivial `I` and `I°`.
    pub fn with_defaults(cat: FinCat) -> MarkedCat {
        let a = cat.all_morphisms();
        let g = cat.identities();
        let interior = super::trivial_structure(&cat);
        let cointerior = interior.clone();
        MarkedCat { cat, a, g, interior, cointerior }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Objects,
    Morphisms,
    Comp,
    Ident,
    A,
    G,
    Interior,
    Cointerior,
}

fn section(word: &str) -> Option<Section> {
    Some(match word {
        "OBJECTS" => Section::Objects,
        "MORPHISMS" => Section::Morphisms,
        "COMP" => Section::Comp,
        "IDENT" => Section::Ident,
        "A" => Section::A,
        "G" => Section::G,
        "INTERIOR" => Section::Interior,
        "COINTERIOR" => Section::Cointerior,
        _ => return None,
    })
}

/// A lone token of capital letters is a section header; single letters other
/// than `A` and `G` stay available as object names.
fn looks_like_header(t: &str) -> bool {
    t == "A" || t == "G" || (t.len() > 1 && t.chars().all(|c| c.is_ascii_uppercase()))
}

pub fn parse_category(text: &str) -> Result<MarkedCat> {
    let mut lines: Vec<(usize, Section, Vec<&str>)> = Vec::new();
    let mut current: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 1 && looks_like_header(toks[0]) {
            match section(toks[0]) {
                Some(s) => current = Some(s),
                None => return Err(Error::parse(line_no, format!("unknown section `{}`", toks[0]))),
            }
            continue;
        }
        match current {
            None => return Err(Error::parse(line_no, "content before any section header")),
            Some(s) => lines.push((line_no, s, toks)),
        }
    }

    let mut b = CatBuilder::new();
    let mut objs: HashMap<String, ObjId> = HashMap::new();
    let mut mors: HashMap<String, MorId> = HashMap::new();
    for (ln, _, toks) in lines.iter().filter(|l| l.1 == Section::Objects) {
        for t in toks {
            if objs.contains_key(*t) {
                return Err(Error::parse(*ln, format!("duplicate object `{t}`")));
            }
            objs.insert(t.to_string(), b.object(*t));
        }
    }
    let obj = |ln: usize, t: &str, objs: &HashMap<String, ObjId>| {
        objs.get(t).copied().ok_or_else(|| Error::parse(ln, format!("unknown object `{t}`")))
    };
    for (ln, _, toks) in lines.iter().filter(|l| l.1 == Section::Morphisms) {
        if toks.len() != 3 {
            return Err(Error::parse(*ln, "expected `id src dst`"));
        }
        if mors.contains_key(toks[0]) {
            return Err(Error::parse(*ln, format!("duplicate morphism `{}`", toks[0])));
        }
        let s = obj(*ln, toks[1], &objs)?;
        let d = obj(*ln, toks[2], &objs)?;
        mors.insert(toks[0].to_string(), b.morphism(toks[0], s, d));
    }
    if b.num_morphisms() > super::MAX_MORPHISMS {
        return Err(Error::Limit(format!("more than {} morphisms", super::MAX_MORPHISMS)));
    }
    let mor = |ln: usize, t: &str| mors.get(t).copied().ok_or_else(|| Error::parse(ln, format!("unknown morphism `{t}`")));
    for (ln, _, toks) in lines.iter().filter(|l| l.1 == Section::Comp) {
        if toks.len() != 3 {
            return Err(Error::parse(*ln, "expected `g f result`"));
        }
        b.compose(mor(*ln, toks[0])?, mor(*ln, toks[1])?, mor(*ln, toks[2])?);
    }
    for (ln, _, toks) in lines.iter().filter(|l| l.1 == Section::Ident) {
        if toks.len() != 2 {
            return Err(Error::parse(*ln, "expected `object morphism`"));
        }
        b.identity(obj(*ln, toks[0], &objs)?, mor(*ln, toks[1])?);
    }
    let cat = b.build()?;
    let mut marked = MarkedCat::with_defaults(cat);
    let n = marked.cat.num_morphisms();
    for (sec, target) in [(Section::A, 0), (Section::G, 1)] {
        let entries: Vec<_> = lines.iter().filter(|l| l.1 == sec).collect();
        if entries.is_empty() {
            continue;
        }
        let mut set = MorSet::empty(n);
        for (ln, _, toks) in entries {
            for t in toks {
                if *t == "*" {
                    let all = if target == 0 { marked.cat.all_morphisms() } else { marked.cat.all_isos() };
                    for m in all.iter() {
                        set.insert(m);
                    }
                } else {
                    set.insert(mor(*ln, t)?);
                }
            }
        }
        if target == 0 {
            marked.a = set;
        } else {
            marked.g = set;
        }
    }
    for (sec, is_interior) in [(Section::Interior, true), (Section::Cointerior, false)] {
        for (ln, _, toks) in lines.iter().filter(|l| l.1 == sec) {
            let o = obj(*ln, toks[0], &objs)?;
            let mut gens = Vec::new();
            for t in &toks[1..] {
                let m = mor(*ln, t)?;
                if marked.cat.src(m) != o || marked.cat.dst(m) != o {
                    return Err(Error::parse(*ln, format!("`{t}` is not an endomorphism of `{}`", toks[0])));
                }
                gens.push(m);
            }
            if marked.cat.validate().is_empty() {
                gens = marked.cat.subgroup_closure(o, &gens);
            } else {
                gens.insert(0, marked.cat.id(o));
            }
            if is_interior {
                marked.interior[o.0] = gens;
            } else {
                marked.cointerior[o.0] = gens;
            }
        }
    }
    Ok(marked)
}

/// Writes every section explicitly, in object and morphism order.
pub fn serialize_category(m: &MarkedCat) -> String {
    let c = &m.cat;
    let mut s = String::new();
    s.push_str("OBJECTS\n");
    for o in c.objects() {
        let _ = writeln!(s, "{}", c.obj_name(o));
    }
    s.push_str("MORPHISMS\n");
    for f in c.morphisms() {
        let _ = writeln!(s, "{} {} {}", c.mor_name(f), c.obj_name(c.src(f)), c.obj_name(c.dst(f)));
    }
    s.push_str("COMP\n");
    for f in c.morphisms() {
        for &g in c.out_of(c.dst(f)) {
            if let Some(h) = c.try_comp(g, f) {
                let _ = writeln!(s, "{} {} {}", c.mor_name(g), c.mor_name(f), c.mor_name(h));
            }
        }
    }
    s.push_str("IDENT\n");
    for o in c.objects() {
        let _ = writeln!(s, "{} {}", c.obj_name(o), c.mor_name(c.id(o)));
    }
    for (name, set) in [("A", &m.a), ("G", &m.g)] {
        let _ = writeln!(s, "{name}");
        for f in set.iter() {
            let _ = writeln!(s, "{}", c.mor_name(f));
        }
    }
    for (name, st) in [("INTERIOR", &m.interior), ("COINTERIOR", &m.cointerior)] {
        let _ = writeln!(s, "{name}");
        for o in c.objects() {
            let gens: Vec<&str> = st[o.0].iter().filter(|&&g| g != c.id(o)).map(|&g| c.mor_name(g)).collect();
            if gens.is_empty() {
                continue;
            }
            let _ = writeln!(s, "{} {}", c.obj_name(o), gens.join(" "));
        }
    }
    s
}
