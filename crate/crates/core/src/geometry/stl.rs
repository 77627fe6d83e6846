use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::Vector3;

use super::SurfaceMesh;
use crate::error::{Error, Result};

/// File name used for exported particle geometry.
pub const DEFAULT_STL_NAME: &str = "particle_data.stl";

/// ASCII STL text of `mesh`. Coordinates carry 17 significant digits, so
/// parsing the text back reproduces every `f64` exactly.
pub fn write_stl(mesh: &SurfaceMesh) -> String {
    let mut out = String::from("solid particle\n");
    for (t, n) in mesh.triangles.iter().zip(&mesh.facet_normals) {
        let _ = writeln!(out, "  facet normal {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z);
        out.push_str("    outer loop\n");
        for &i in t {
            let v = mesh.vertices[i];
            let _ = writeln!(out, "      vertex {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
        }
        out.push_str("    endloop\n  endfacet\n");
    }
    out.push_str("endsolid particle\n");
    out
}

pub fn export_stl(mesh: &SurfaceMesh, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_stl(mesh))?;
    Ok(())
}

/// Parse ASCII STL text, merging bit-identical vertices.
pub fn parse_stl(text: &str) -> Result<SurfaceMesh> {
    let mut vertices: Vec<Vector3<f64>> = Vec::new();
    let mut lookup: std::collections::HashMap<[u64; 3], usize> = std::collections::HashMap::new();
    let mut triangles = Vec::new();
    let mut normals = Vec::new();
    let mut current: Vec<usize> = Vec::new();

    let parse3 = |parts: &[&str]| -> Result<Vector3<f64>> {
        if parts.len() != 3 {
            return Err(Error::Config("malformed STL coordinate triple".into()));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(parts) {
            *slot = p.parse().map_err(|_| Error::Config(format!("bad STL number '{p}'")))?;
        }
        Ok(Vector3::new(v[0], v[1], v[2]))
    };

    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["facet", "normal", rest @ ..] => normals.push(parse3(rest)?),
            ["vertex", rest @ ..] => {
                let v = parse3(rest)?;
                let key = [v.x.to_bits(), v.y.to_bits(), v.z.to_bits()];
                let idx = *lookup.entry(key).or_insert_with(|| {
                    vertices.push(v);
                    vertices.len() - 1
                });
                current.push(idx);
            }
            ["endloop"] => {
                if current.len() != 3 {
                    return Err(Error::Config("STL facet without exactly three vertices".into()));
                }
                triangles.push([current[0], current[1], current[2]]);
                current.clear();
            }
            _ => {}
        }
    }
    if normals.len() != triangles.len() {
        return Err(Error::Config("STL facet/normal count mismatch".into()));
    }
    Ok(SurfaceMesh { vertices, triangles, facet_normals: normals })
}
