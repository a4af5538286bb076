//! File formats: exact polytope JSON, generator JSON, and OFF export.
//!
//! The JSON formats carry rationals as strings ("p" or "p/q"), never floats,
//! so import/export round-trips are bit-exact. OFF is a lossy export for
//! mesh viewers only.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, parse_rat, rat_to_decimal};
use crate::geom::{hull3, Polytope3};
use crate::vec3::{IVec3, Vec3};
use crate::{Error, Result};

/// Exact vertex file: `{"vertices": [["x", "y", "z"], ...]}` with rational
/// coordinate strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub vertices: Vec<[String; 3]>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &Polytope3) -> PolytopeFile {
        let vertices = p
            .vertices()
            .iter()
            .map(|v| [format_rat(&v.x), format_rat(&v.y), format_rat(&v.z)])
            .collect();
        PolytopeFile { vertices }
    }

    pub fn points(&self) -> Result<Vec<Vec3>> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.vertices
            .iter()
            .map(|[x, y, z]| Ok(Vec3::new(parse_rat(x)?, parse_rat(y)?, parse_rat(z)?)))
            .collect()
    }
}

/// Generator file for the oriented-matroid commands:
/// `{"generators": [["x", "y", "z"], ...]}` with integer strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub generators: Vec<[String; 3]>,
}

impl GeneratorFile {
    pub fn from_vectors(vs: &[IVec3]) -> GeneratorFile {
        let generators =
            vs.iter().map(|v| [v.x.to_string(), v.y.to_string(), v.z.to_string()]).collect();
        GeneratorFile { generators }
    }

    pub fn vectors(&self) -> Result<Vec<IVec3>> {
        self.generators
            .iter()
            .map(|[x, y, z]| {
                let parse = |s: &str| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
                };
                Ok(IVec3::new(parse(x)?, parse(y)?, parse(z)?))
            })
            .collect()
    }
}

pub fn read_polytope(path: &Path) -> Result<Polytope3> {
    let text = std::fs::read_to_string(path)?;
    let file: PolytopeFile = serde_json::from_str(&text)?;
    hull3(&file.points()?)
}

pub fn write_polytope(path: &Path, p: &Polytope3) -> Result<()> {
    let file = PolytopeFile::from_polytope(p);
    std::fs::write(path, serde_json::to_string_pretty(&file)? + "\n")?;
    Ok(())
}

pub fn read_generators(path: &Path) -> Result<Vec<IVec3>> {
    let text = std::fs::read_to_string(path)?;
    let file: GeneratorFile = serde_json::from_str(&text)?;
    file.vectors()
}

/// Parses "x,y,z" with exact rational components.
pub fn parse_vec3_arg(s: &str) -> Result<Vec3> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected x,y,z but got {s:?}")));
    }
    Ok(Vec3::new(parse_rat(parts[0])?, parse_rat(parts[1])?, parse_rat(parts[2])?))
}

/// Parses "x,y,z" with integer components.
pub fn parse_ivec3_arg(s: &str) -> Result<IVec3> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected x,y,z but got {s:?}")));
    }
    let parse = |t: &str| {
        t.trim().parse().map_err(|_| Error::Parse(format!("invalid integer {t:?}")))
    };
    Ok(IVec3::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
}

/// Parses "x,y,z;x,y,z;..." into a vector list.
pub fn parse_generator_list(s: &str) -> Result<Vec<IVec3>> {
    s.split(';').map(|chunk| parse_ivec3_arg(chunk.trim())).collect()
}

/// OFF export with decimal vertex coordinates and counterclockwise outward
/// facet polygons. Only polytopes with 2-faces can be exported.
pub fn write_off(out: &mut dyn Write, p: &Polytope3, digits: usize) -> Result<()> {
    if p.dim() < 2 {
        return Err(Error::InvalidParameter(format!(
            "OFF export needs a polygon or 3-polytope, got dimension {}",
            p.dim()
        )));
    }
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} {}", p.vertex_count(), p.facet_count(), p.edge_count())?;
    for v in p.vertices() {
        writeln!(
            out,
            "{} {} {}",
            rat_to_decimal(&v.x, digits),
            rat_to_decimal(&v.y, digits),
            rat_to_decimal(&v.z, digits)
        )?;
    }
    for facet in p.facets() {
        write!(out, "{}", facet.cycle.len())?;
        for &v in &facet.cycle {
            write!(out, " {v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_json_round_trip_preserves_exact_coordinates() {
        let pts = vec![
            Vec3::new(
                crate::arith::rat_frac(1, 3),
                crate::arith::rat(0),
                crate::arith::rat(0),
            ),
            Vec3::from_ints(1, 0, 0),
            Vec3::from_ints(0, 1, 0),
            Vec3::from_ints(0, 0, 1),
            Vec3::from_ints(1, 1, 1),
        ];
        let p = hull3(&pts).unwrap();
        let file = PolytopeFile::from_polytope(&p);
        let json = serde_json::to_string(&file).unwrap();
        let back: PolytopeFile = serde_json::from_str(&json).unwrap();
        let q = hull3(&back.points().unwrap()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn vec3_arg_parsing() {
        let v = parse_vec3_arg("1/2, -3, 4").unwrap();
        assert_eq!(v, Vec3::new(crate::arith::rat_frac(1, 2), crate::arith::rat(-3), crate::arith::rat(4)));
        assert!(parse_vec3_arg("1,2").is_err());
        let gens = parse_generator_list("1,0,0; 0,1,0; 0,0,1").unwrap();
        assert_eq!(gens.len(), 3);
        assert!(parse_ivec3_arg("1/2,0,0").is_err());
    }
}
