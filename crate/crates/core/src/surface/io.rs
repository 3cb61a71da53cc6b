//! Text tables for surfaces: `# key=value` metadata lines, one header row, one sample per row.
//! Numbers are written with 17 significant digits so a round trip is lossless.

use super::{BoundarySample, SampledSurface, SurfaceMeta, SurfaceSample};
use crate::error::{Error, Result};
use crate::geom::{AmbientKind, AmbientSpace, Vec3};
use crate::quadrature::QuadratureRule;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

pub const SURFACE_COLUMNS: &str = "x,y,z,w,nx,ny,nz,hx,hy,hz,k,a2,e1x,e1y,e1z,e2x,e2y,e2z,tp,s11,s12,s22";
pub const BOUNDARY_COLUMNS: &str = "x,y,z,w,tx,ty,tz,mx,my,mz,nx,ny,nz,kg,kgw";

pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn push_vec(row: &mut Vec<String>, v: Vec3) {
    row.push(num(v.x));
    row.push(num(v.y));
    row.push(num(v.z));
}

fn ambient_name(k: AmbientKind) -> &'static str {
    match k {
        AmbientKind::HalfSpace => "half-space",
        AmbientKind::UnitBall => "ball",
    }
}

pub fn parse_ambient_kind(s: &str) -> Result<AmbientKind> {
    match s {
        "half-space" | "halfspace" => Ok(AmbientKind::HalfSpace),
        "ball" | "unit-ball" => Ok(AmbientKind::UnitBall),
        _ => Err(Error::Parse(format!("unknown ambient '{s}'"))),
    }
}

pub fn write_surface<W: Write>(s: &SampledSurface, mut w: W) -> Result<()> {
    writeln!(w, "# format=capmono-surface-v1")?;
    writeln!(w, "# ambient={}", ambient_name(s.ambient.kind))?;
    writeln!(w, "# theta={}", num(s.ambient.theta))?;
    writeln!(w, "# generator={}", s.meta.generator)?;
    for (k, v) in &s.meta.params {
        writeln!(w, "# param.{k}={}", num(*v))?;
    }
    writeln!(w, "# rule={}", s.meta.rule.name())?;
    writeln!(w, "# nu={}", s.meta.nu)?;
    writeln!(w, "# nv={}", s.meta.nv)?;
    writeln!(w, "# chi={}", s.euler_characteristic)?;
    writeln!(w, "# corner_turning={}", num(s.corner_turning))?;
    if let Some(h) = s.meta.exterior_hint {
        writeln!(w, "# exterior_hint={};{};{}", num(h.x), num(h.y), num(h.z))?;
    }
    writeln!(w, "{SURFACE_COLUMNS}")?;
    for p in &s.interior {
        let mut row = Vec::with_capacity(22);
        push_vec(&mut row, p.point);
        row.push(num(p.weight));
        push_vec(&mut row, p.normal);
        push_vec(&mut row, p.mean_curvature);
        row.push(num(p.gauss));
        row.push(num(p.second_form_norm2));
        push_vec(&mut row, p.cell[0]);
        push_vec(&mut row, p.cell[1]);
        row.push(num(p.taper));
        row.extend(p.second_form.iter().map(|v| num(*v)));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_boundary<W: Write>(s: &SampledSurface, mut w: W) -> Result<()> {
    writeln!(w, "# format=capmono-boundary-v1")?;
    writeln!(w, "{BOUNDARY_COLUMNS}")?;
    for b in &s.boundary {
        let mut row = Vec::with_capacity(15);
        push_vec(&mut row, b.point);
        row.push(num(b.arc_weight));
        push_vec(&mut row, b.tangent);
        push_vec(&mut row, b.conormal);
        push_vec(&mut row, b.normal);
        row.push(num(b.geodesic_curvature));
        row.push(num(b.wetting_curvature));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Metadata lines and numeric rows of a table.
pub(crate) struct Table {
    pub meta: BTreeMap<String, String>,
    pub params: Vec<(String, String)>,
    pub rows: Vec<Vec<f64>>,
}

pub(crate) fn read_table<R: BufRead>(r: R, columns: &str) -> Result<Table> {
    let mut meta = BTreeMap::new();
    let mut params = Vec::new();
    let mut rows = Vec::new();
    let mut header = false;
    let ncol = columns.split(',').count();
    for (ln, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some((k, v)) = rest.split_once('=') {
                if let Some(p) = k.strip_prefix("param.") {
                    params.push((p.to_string(), v.to_string()));
                } else {
                    meta.insert(k.to_string(), v.to_string());
                }
            }
            continue;
        }
        if !header {
            if line != columns {
                return Err(Error::Parse(format!("line {}: expected header '{columns}'", ln + 1)));
            }
            header = true;
            continue;
        }
        let vals: std::result::Result<Vec<f64>, _> = line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
        if vals.len() != ncol {
            return Err(Error::Parse(format!("line {}: {} columns, expected {ncol}", ln + 1, vals.len())));
        }
        rows.push(vals);
    }
    if !header {
        return Err(Error::Parse("missing header row".into()));
    }
    Ok(Table { meta, params, rows })
}

fn v3(r: &[f64], i: usize) -> Vec3 {
    Vec3::new(r[i], r[i + 1], r[i + 2])
}

fn meta_f64(t: &Table, key: &str) -> Result<f64> {
    t.meta
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing metadata '{key}'")))?
        .parse()
        .map_err(|e| Error::Parse(format!("metadata '{key}': {e}")))
}

pub fn read_surface<R: BufRead, B: BufRead>(surface: R, boundary: B) -> Result<SampledSurface> {
    let t = read_table(surface, SURFACE_COLUMNS)?;
    let kind = parse_ambient_kind(t.meta.get("ambient").map(String::as_str).unwrap_or(""))?;
    let ambient = AmbientSpace::new(kind, meta_f64(&t, "theta")?).map_err(|e| Error::Parse(e.to_string()))?;
    let rule = t
        .meta
        .get("rule")
        .and_then(|r| QuadratureRule::parse(r))
        .ok_or_else(|| Error::Parse("missing or unknown rule".into()))?;
    let params = t
        .params
        .iter()
        .map(|(k, v)| v.parse::<f64>().map(|x| (k.clone(), x)).map_err(|e| Error::Parse(format!("param {k}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let exterior_hint = match t.meta.get("exterior_hint") {
        Some(s) => {
            let p: std::result::Result<Vec<f64>, _> = s.split(';').map(str::parse::<f64>).collect();
            let p = p.map_err(|e| Error::Parse(format!("exterior_hint: {e}")))?;
            if p.len() != 3 {
                return Err(Error::Parse("exterior_hint needs three coordinates".into()));
            }
            Some(Vec3::new(p[0], p[1], p[2]))
        }
        None => None,
    };
    let interior = t
        .rows
        .iter()
        .map(|r| SurfaceSample {
            point: v3(r, 0),
            weight: r[3],
            normal: v3(r, 4),
            mean_curvature: v3(r, 7),
            gauss: r[10],
            second_form_norm2: r[11],
            cell: [v3(r, 12), v3(r, 15)],
            taper: r[18],
            second_form: [r[19], r[20], r[21]],
        })
        .collect();
    let bt = read_table(boundary, BOUNDARY_COLUMNS)?;
    let boundary = bt
        .rows
        .iter()
        .map(|r| BoundarySample {
            point: v3(r, 0),
            arc_weight: r[3],
            tangent: v3(r, 4),
            conormal: v3(r, 7),
            normal: v3(r, 10),
            geodesic_curvature: r[13],
            wetting_curvature: r[14],
        })
        .collect();
    Ok(SampledSurface {
        ambient,
        interior,
        boundary,
        euler_characteristic: meta_f64(&t, "chi")? as i32,
        corner_turning: meta_f64(&t, "corner_turning")?,
        meta: SurfaceMeta {
            generator: t.meta.get("generator").cloned().unwrap_or_default(),
            params,
            rule,
            nu: meta_f64(&t, "nu")? as usize,
            nv: meta_f64(&t, "nv")? as usize,
            exterior_hint,
        },
    })
}

pub const SURFACE_FILE: &str = "surface.csv";
pub const BOUNDARY_FILE: &str = "boundary.csv";

pub fn save_surface(s: &SampledSurface, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut buf = Vec::new();
    write_surface(s, &mut buf)?;
    std::fs::write(dir.join(SURFACE_FILE), buf)?;
    let mut buf = Vec::new();
    write_boundary(s, &mut buf)?;
    std::fs::write(dir.join(BOUNDARY_FILE), buf)?;
    Ok(())
}

pub fn load_surface(dir: &Path) -> Result<SampledSurface> {
    let open = |f: &str| -> Result<std::io::BufReader<std::fs::File>> {
        Ok(std::io::BufReader::new(std::fs::File::open(dir.join(f)).map_err(|e| {
            Error::Config(format!("cannot open {}: {e}", dir.join(f).display()))
        })?))
    };
    read_surface(open(SURFACE_FILE)?, open(BOUNDARY_FILE)?)
}
