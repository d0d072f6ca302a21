//! The line-oriented `.tri` format.
//!
//! ```text
//! tets 2 cusps 1
//! face 0 -> tet 1 face 0 perm 0132
//! ...                      (four lines per tetrahedron, in tetrahedron order)
//! cusp 0 tet 0 vertex 0
//! basis 0 1 0 0 1          (optional, per cusp)
//! ```
//!
//! A `basis c a b c d` line sets the peripheral basis of cusp `c` to
//! `a·m + b·l`, `c·m + d·l` where `m`, `l` are the curves traced on the cusp
//! triangulation. Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{Gluing, IdealTriangulation, Perm4, TriangulationError};

fn syntax(line: usize, message: impl Into<String>) -> TriangulationError {
    TriangulationError::Syntax { line, message: message.into() }
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize, TriangulationError> {
    token.and_then(|t| t.parse().ok()).ok_or_else(|| syntax(line, format!("expected {what}")))
}

fn keyword(line: usize, token: Option<&str>, expected: &str) -> Result<(), TriangulationError> {
    match token {
        Some(t) if t == expected => Ok(()),
        _ => Err(syntax(line, format!("expected `{expected}`"))),
    }
}

fn parse_perm(line: usize, token: Option<&str>) -> Result<Perm4, TriangulationError> {
    let bad = || syntax(line, "expected a permutation like 0132");
    let t = token.ok_or_else(bad)?;
    if t.len() != 4 {
        return Err(bad());
    }
    let mut images = [0u8; 4];
    for (slot, ch) in images.iter_mut().zip(t.chars()) {
        *slot = ch.to_digit(10).ok_or_else(bad)? as u8;
    }
    Perm4::new(images).ok_or_else(bad)
}

pub fn parse_triangulation(text: &str) -> Result<IdealTriangulation, TriangulationError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    keyword(ln, tok.next(), "tets")?;
    let n = number(ln, tok.next(), "tetrahedron count")?;
    keyword(ln, tok.next(), "cusps")?;
    let num_cusps = number(ln, tok.next(), "cusp count")?;
    if tok.next().is_some() {
        return Err(syntax(ln, "trailing tokens"));
    }
    if n == 0 {
        return Err(TriangulationError::Empty);
    }

    let mut slots: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
    let mut claimed: HashSet<(usize, usize)> = HashSet::new();
    for t in 0..n {
        for _ in 0..4 {
            let Some(&(ln, l)) = lines.peek() else { break };
            if !l.starts_with("face") {
                break;
            }
            lines.next();
            let mut tok = l.split_whitespace();
            keyword(ln, tok.next(), "face")?;
            let f = number(ln, tok.next(), "face index")?;
            keyword(ln, tok.next(), "->")?;
            keyword(ln, tok.next(), "tet")?;
            let target = number(ln, tok.next(), "target tetrahedron")?;
            keyword(ln, tok.next(), "face")?;
            let g = number(ln, tok.next(), "target face")?;
            keyword(ln, tok.next(), "perm")?;
            let perm = parse_perm(ln, tok.next())?;
            if tok.next().is_some() {
                return Err(syntax(ln, "trailing tokens"));
            }
            if f > 3 || g > 3 {
                return Err(syntax(ln, "face index out of range"));
            }
            if target >= n {
                return Err(syntax(ln, format!("no tetrahedron {target}")));
            }
            if perm.apply(f) != g {
                return Err(TriangulationError::TargetFaceMismatch {
                    tet: t,
                    face: f,
                    declared: g,
                    implied: perm.apply(f),
                });
            }
            if slots[t][f].is_some() {
                return Err(TriangulationError::FaceReglued { tet: t, face: f });
            }
            // a face may be the target of only one gluing
            if claimed.contains(&(target, g)) {
                return Err(TriangulationError::FaceReglued { tet: target, face: g });
            }
            claimed.insert((target, g));
            slots[t][f] = Some(Gluing { tet: target, perm });
        }
        for f in 0..4 {
            if slots[t][f].is_none() {
                return Err(TriangulationError::UngluedFace { tet: t, face: f });
            }
        }
    }
    let gluings: Vec<[Gluing; 4]> = slots.into_iter().map(|s| s.map(|g| g.expect("checked above"))).collect();

    let mut reps = Vec::with_capacity(num_cusps);
    for c in 0..num_cusps {
        let (ln, l) = lines.next().ok_or_else(|| syntax(0, format!("missing line for cusp {c}")))?;
        let mut tok = l.split_whitespace();
        keyword(ln, tok.next(), "cusp")?;
        if number(ln, tok.next(), "cusp index")? != c {
            return Err(syntax(ln, format!("expected cusp {c}")));
        }
        keyword(ln, tok.next(), "tet")?;
        let t = number(ln, tok.next(), "tetrahedron")?;
        keyword(ln, tok.next(), "vertex")?;
        let v = number(ln, tok.next(), "vertex")?;
        if tok.next().is_some() {
            return Err(syntax(ln, "trailing tokens"));
        }
        reps.push((t, v));
    }

    let mut tri = IdealTriangulation::new(gluings, reps)?;
    for (ln, l) in lines {
        let mut tok = l.split_whitespace();
        keyword(ln, tok.next(), "basis")?;
        let c = number(ln, tok.next(), "cusp index")?;
        let mut m = [0i64; 4];
        for x in m.iter_mut() {
            *x = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| syntax(ln, "expected four integers"))?;
        }
        if tok.next().is_some() {
            return Err(syntax(ln, "trailing tokens"));
        }
        tri = tri.with_basis_change(c, m)?;
    }
    Ok(tri)
}

pub fn serialize_triangulation(tri: &IdealTriangulation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tets {} cusps {}", tri.num_tetrahedra(), tri.num_cusps());
    for faces in tri.gluings() {
        for (f, g) in faces.iter().enumerate() {
            let _ = writeln!(out, "face {f} -> tet {} face {} perm {}", g.tet, g.perm.apply(f), g.perm);
        }
    }
    for (c, (t, v)) in tri.cusp_representatives().iter().enumerate() {
        let _ = writeln!(out, "cusp {c} tet {t} vertex {v}");
    }
    for c in 0..tri.num_cusps() {
        let m = tri.basis_change(c);
        if m != [1, 0, 0, 1] {
            let _ = writeln!(out, "basis {c} {} {} {} {}", m[0], m[1], m[2], m[3]);
        }
    }
    out
}
