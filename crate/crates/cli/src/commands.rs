use std::fmt::Write as _;

use bernlab::algebraics::{classify, NumberClass};
use bernlab::curves::{
    curve_intersection, komornik_loreti, network_parameter, rational_form, t_star, Constraint, IntersectionReport,
    ParamRange,
};
use bernlab::density::{approximate, phi_grid, write_csv, write_pgm, write_ppm};
use bernlab::orbits::{
    fibonacci_mixture, finite_orbit, growth_rate, local_dimension, markov_partition, successor_matrix, Bernoulli,
    MixtureGraph, OrbitLimits,
};
use bernlab::unique::{central_catalog, central_point_params, hole_counts, hole_growth, holes, third_catalog, two_address_scan, TwoAddressReport};
use bernlab::words::BitSeq;
use bernlab::{Error, Result};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::params;
use crate::{Cli, Command, Format};

fn unsupported(cmd: &str, f: Format) -> Error {
    Error::InvalidInput(format!("format {f:?} is not available for `{cmd}`").to_lowercase())
}

fn json_bytes(v: Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

fn class_json(c: &NumberClass) -> Value {
    json!({
        "class": c.tag.as_str(),
        "flags": {
            "algebraic_integer": c.flags.algebraic_integer,
            "pisot": c.flags.pisot,
            "salem": c.flags.salem,
            "perron": c.flags.perron,
            "weak_perron": c.flags.weak_perron,
            "garsia": c.flags.garsia,
        },
        "witness": c.witness,
        "conjugate_moduli": c.conjugate_moduli,
    })
}

fn flag_list(c: &NumberClass) -> String {
    let f = &c.flags;
    let names = [
        (f.algebraic_integer, "algebraic_integer"),
        (f.pisot, "pisot"),
        (f.salem, "salem"),
        (f.perron, "perron"),
        (f.weak_perron, "weak_perron"),
        (f.garsia, "garsia"),
    ];
    names.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect::<Vec<_>>().join(" ")
}

fn seq(s: &str) -> Result<BitSeq> {
    BitSeq::parse(s)
}

pub fn run(cli: &Cli) -> Result<Vec<u8>> {
    let f = cli.format;
    let limits = OrbitLimits::with_max_vertices(cli.max_vertices);
    match &cli.command {
        Command::Classify { poly } => classify_cmd(poly, f),
        Command::Orbit { beta, point } => orbit_cmd(beta, point, &limits, f),
        Command::Mixture { k } => mixture_cmd(*k, &limits, f),
        Command::Markov { beta, point } => markov_cmd(beta, point, &limits, f),
        Command::Curve { bitseq, t } => curve_cmd(bitseq, t.as_deref(), f),
        Command::Tstar { bitseq, bits } => tstar_cmd(bitseq, *bits, f),
        Command::Intersect { b, c, range } => intersect_cmd(b, c, range.as_deref(), f),
        Command::Network { constraints } => network_cmd(constraints, f),
        Command::Density { t, bins, iters } => density_cmd(t, *bins, *iters, f),
        Command::Grid { tmin, tmax, nt, bins, iters, xmin, xmax, vmax } => {
            grid_cmd(tmin, tmax, *nt, *bins, *iters, (*xmin, *xmax), *vmax, f)
        }
        Command::Holes { b, depth } => holes_cmd(b, *depth, f),
        Command::ScanTwoAddress { range, k_max, catalog } => {
            let cat = if catalog.is_empty() { third_catalog(*k_max) } else { catalog.iter().map(|s| seq(s)).collect::<Result<_>>()? };
            let reports = two_address_scan(&params::range(range)?, &cat)?;
            reports_out("scan-two-address", &reports, f)
        }
        Command::Central { range, n_max } => {
            let reports = central_point_params(&params::range(range)?, &central_catalog(*n_max))?;
            reports_out("central", &reports, f)
        }
    }
}

fn classify_cmd(poly: &str, f: Format) -> Result<Vec<u8>> {
    let beta = params::beta(poly)?;
    let c = classify(&beta)?;
    match f {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "beta      {:.12}", beta.to_f64());
            let _ = writeln!(s, "minpoly   {}", beta.minpoly());
            let _ = writeln!(s, "class     {}", c.tag);
            let _ = writeln!(s, "flags     {}", flag_list(&c));
            let _ = writeln!(s, "witness   {}", c.witness);
            let moduli: Vec<String> = c.conjugate_moduli.iter().map(|m| format!("{m:.6}")).collect();
            let _ = writeln!(s, "conjugate moduli  {}", moduli.join(" "));
            Ok(s.into_bytes())
        }
        Format::Json => {
            let mut v = class_json(&c);
            v["beta"] = json!(beta.to_f64());
            v["minpoly"] = json!(beta.minpoly().to_string());
            Ok(json_bytes(v))
        }
        Format::Csv => Ok(format!("minpoly,beta,class\n{},{:.12},{}\n", beta.minpoly(), beta.to_f64(), c.tag).into_bytes()),
        _ => Err(unsupported("classify", f)),
    }
}

fn orbit_cmd(beta: &str, point: &str, limits: &OrbitLimits, f: Format) -> Result<Vec<u8>> {
    let beta = params::beta(beta)?;
    let sys = Bernoulli::new(&beta)?;
    let x = sys.field().parse(point)?;
    let g = finite_orbit(&sys, &x, limits)?;
    let growth = if g.closed {
        let gr = growth_rate(&successor_matrix(&g)?)?;
        let d = local_dimension(2, &beta, &gr.enclosure)?;
        Some((gr, d))
    } else {
        None
    };
    match f {
        Format::Dot => Ok(g.to_dot().into_bytes()),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "beta           {:.12}  ({})", beta.to_f64(), beta.minpoly());
            let _ = writeln!(s, "point          {}  = {:.12}", x, x.to_f64());
            let _ = writeln!(s, "closed         {}", g.closed);
            let _ = writeln!(s, "vertices       {}", g.len());
            let _ = writeln!(s, "branch points  {}", g.branch_points().len());
            if let Some((gr, d)) = &growth {
                let _ = writeln!(s, "growth rate    {}", gr.enclosure);
                let _ = writeln!(s, "local dim      {}", d);
            }
            for (i, v) in g.vertices.iter().enumerate() {
                let mark = if i == g.root { "*" } else { " " };
                let _ = writeln!(s, "{mark}{i:>4}  {:.12}  {}", v.to_f64(), v);
            }
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut s = String::from("index,value,expr,out_degree,root\n");
            for (i, v) in g.vertices.iter().enumerate() {
                let _ = writeln!(s, "{i},{:.12},\"{}\",{},{}", v.to_f64(), v, g.out_degree(i), i == g.root);
            }
            Ok(s.into_bytes())
        }
        Format::Json => {
            let vertices: Vec<Value> = g.vertices.iter().map(|v| json!({"value": v.to_f64(), "expr": v.to_string()})).collect();
            let edges: Vec<Value> = g.edges.iter().map(|e| json!([e.from, e.to, e.label])).collect();
            let mut v = json!({
                "beta": beta.to_f64(),
                "minpoly": beta.minpoly().to_string(),
                "closed": g.closed,
                "root": g.root,
                "vertices": vertices,
                "edges": edges,
                "branch_points": g.branch_points(),
            });
            if let Some((gr, d)) = &growth {
                v["growth_rate"] = json!([gr.enclosure.lo, gr.enclosure.hi]);
                v["local_dimension"] = json!([d.lo, d.hi]);
            }
            Ok(json_bytes(v))
        }
        _ => Err(unsupported("orbit", f)),
    }
}

fn mixture_cmd(k: usize, limits: &OrbitLimits, f: Format) -> Result<Vec<u8>> {
    let m = fibonacci_mixture(k, limits)?;
    let mg = MixtureGraph::from_orbit(&m.graph)?;
    let rate = mg.growth_rate()?;
    let words: Vec<String> = m.words.iter().map(|w| w.to_string()).collect();
    match f {
        Format::Dot => {
            let mut s = format!("// Fibonacci mixture k = {k}: {} cycles of length {}\n", mg.cycles, mg.period);
            for w in &words {
                let _ = writeln!(s, "// cycle {w}");
            }
            s.push_str(&m.graph.to_dot());
            Ok(s.into_bytes())
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "k            {k}");
            let _ = writeln!(s, "point        {:.12}", m.point.to_f64());
            let _ = writeln!(s, "vertices     {}", m.graph.len());
            let _ = writeln!(s, "cycles       {} of length {}", mg.cycles, mg.period);
            let _ = writeln!(s, "growth rate  {}", rate.enclosure);
            let _ = writeln!(s, "words        {}", words.join(" "));
            Ok(s.into_bytes())
        }
        Format::Json => Ok(json_bytes(json!({
            "k": k,
            "point": m.point.to_f64(),
            "vertices": m.graph.len(),
            "period": mg.period,
            "cycles": mg.cycles.to_string(),
            "words": words,
            "growth_rate": [rate.enclosure.lo, rate.enclosure.hi],
        }))),
        Format::Csv => {
            let mut s = String::from("word\n");
            for w in &words {
                let _ = writeln!(s, "{w}");
            }
            Ok(s.into_bytes())
        }
        _ => Err(unsupported("mixture", f)),
    }
}

fn markov_cmd(beta: &str, point: &str, limits: &OrbitLimits, f: Format) -> Result<Vec<u8>> {
    let beta = params::beta(beta)?;
    let sys = Bernoulli::new(&beta)?;
    let x = sys.field().parse(point)?;
    let g = finite_orbit(&sys, &x, limits)?;
    let half = BigRational::new(1.into(), 2.into());
    let p = markov_partition(&sys, &g, [half.clone(), half])?;
    let w_f64 = |k: usize| num_traits::ToPrimitive::to_f64(&p.stationary[k]).unwrap_or(f64::NAN);
    match f {
        Format::Text | Format::Csv => {
            let mut s = if f == Format::Csv { String::from("k,left,right,w,w_float\n") } else { String::new() };
            for k in 0..p.len() {
                let (a, b) = p.interval_f64(k);
                if f == Format::Csv {
                    let _ = writeln!(s, "{k},{a:.12},{b:.12},{},{:.12}", p.stationary[k], w_f64(k));
                } else {
                    let _ = writeln!(s, "J{k:<3} [{a:.6}, {b:.6}]  w = {}  ({:.9})", p.stationary[k], w_f64(k));
                }
            }
            Ok(s.into_bytes())
        }
        Format::Json => {
            let matrix: Vec<Vec<String>> = p.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let cuts: Vec<f64> = p.cut_points.iter().map(|c| c.to_f64()).collect();
            let w: Vec<String> = p.stationary.iter().map(|x| x.to_string()).collect();
            Ok(json_bytes(json!({"cut_points": cuts, "matrix": matrix, "stationary": w})))
        }
        _ => Err(unsupported("markov", f)),
    }
}

fn curve_cmd(bitseq: &str, t: Option<&str>, f: Format) -> Result<Vec<u8>> {
    let b = seq(bitseq)?;
    let c = rational_form(&b);
    let ts = if b.is_itinerary() { Some(t_star(&b)?) } else { None };
    let value = match t {
        Some(t) => Some((params::t_float(t)?, c.eval_f64(params::t_float(t)?))),
        None => None,
    };
    let ts_f = ts.as_ref().map(|a| a.to_f64());
    match f {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "address      {b}");
            let _ = writeln!(s, "y(t)         ({}) / ({})", c.numerator.to_string_var("t"), c.denominator.to_string_var("t"));
            if let Some(ts) = &ts {
                let _ = writeln!(s, "t*           {:.12}  ({})", ts.to_f64(), ts.minpoly().to_string_var("t"));
            }
            if let Some((t, y)) = value {
                let _ = writeln!(s, "y({t})  {y:.12}");
            }
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut s = String::from("address,numerator,denominator,t_star\n");
            let ts = ts_f.map(|v| format!("{v:.12}")).unwrap_or_default();
            let _ = writeln!(s, "{b},{},{},{ts}", c.numerator.to_string_var("t"), c.denominator.to_string_var("t"));
            Ok(s.into_bytes())
        }
        Format::Json => {
            let mut v = json!({
                "address": b.to_string(),
                "numerator": c.numerator.to_string_var("t"),
                "denominator": c.denominator.to_string_var("t"),
                "t_star": ts_f,
            });
            if let Some((t, y)) = value {
                v["t"] = json!(t);
                v["y"] = json!(y);
            }
            Ok(json_bytes(v))
        }
        _ => Err(unsupported("curve", f)),
    }
}

fn tstar_cmd(bitseq: &str, bits: u32, f: Format) -> Result<Vec<u8>> {
    if bitseq == "kl" {
        let br = komornik_loreti(bits)?;
        let (lo, hi) = br.to_f64();
        return match f {
            Format::Text => Ok(format!("t_KL in [{lo:.15}, {hi:.15}]\nprefix length {}\n", br.prefix_len).into_bytes()),
            Format::Csv => Ok(format!("lo,hi,prefix_len\n{lo:.15},{hi:.15},{}\n", br.prefix_len).into_bytes()),
            Format::Json => Ok(json_bytes(json!({"lo": lo, "hi": hi, "lo_exact": br.lo.to_string(), "hi_exact": br.hi.to_string(), "prefix_len": br.prefix_len}))),
            _ => Err(unsupported("tstar", f)),
        };
    }
    let b = seq(bitseq)?;
    let ts = t_star(&b)?;
    let beta = ts.reciprocal()?;
    let kneading = b.kneading_of()?;
    match f {
        Format::Text => Ok(format!(
            "address   {b}\nkneading  {kneading}\nt*        {:.12}  ({})\nbeta      {:.12}  ({})\n",
            ts.to_f64(),
            ts.minpoly().to_string_var("t"),
            beta.to_f64(),
            beta.minpoly()
        )
        .into_bytes()),
        Format::Csv => Ok(format!("address,t_star,t_minpoly,beta_minpoly\n{b},{:.12},{},{}\n", ts.to_f64(), ts.minpoly().to_string_var("t"), beta.minpoly()).into_bytes()),
        Format::Json => Ok(json_bytes(json!({
            "address": b.to_string(),
            "kneading": kneading.to_string(),
            "t_star": ts.to_f64(),
            "t_minpoly": ts.minpoly().to_string_var("t"),
            "beta_minpoly": beta.minpoly().to_string(),
        }))),
        _ => Err(unsupported("tstar", f)),
    }
}

const INTERSECTION_HEADER: &str = "s,t_minpoly,beta_minpoly,z,class,inside_overlap,boundary";

fn intersection_row(r: &IntersectionReport) -> String {
    format!(
        "{:.12},{},{},{:.12},{},{},{}",
        r.s.to_f64(),
        r.t_minpoly().to_string_var("t"),
        r.beta_minpoly(),
        r.z.to_f64(),
        r.number_class.tag,
        r.inside_overlap,
        r.boundary
    )
}

fn intersection_json(r: &IntersectionReport) -> Value {
    json!({
        "s": r.s.to_f64(),
        "t_minpoly": r.t_minpoly().to_string_var("t"),
        "beta_minpoly": r.beta_minpoly().to_string(),
        "z": r.z.to_f64(),
        "class": r.number_class.tag.as_str(),
        "inside_overlap": r.inside_overlap,
        "boundary": r.boundary,
    })
}

fn intersection_text(r: &IntersectionReport) -> String {
    format!(
        "s = {:.12}  z = {:.12}  class {}  t-minpoly {}  beta-minpoly {}{}\n",
        r.s.to_f64(),
        r.z.to_f64(),
        r.number_class.tag,
        r.t_minpoly().to_string_var("t"),
        r.beta_minpoly(),
        if r.inside_overlap { "  (in D)" } else { "" }
    )
}

fn intersect_cmd(b: &str, c: &str, range: Option<&str>, f: Format) -> Result<Vec<u8>> {
    let range = match range {
        Some(r) => params::range(r)?,
        None => ParamRange::default(),
    };
    let reps = curve_intersection(&seq(b)?, &seq(c)?, &range)?;
    match f {
        Format::Csv => {
            let mut s = format!("{INTERSECTION_HEADER}\n");
            for r in &reps {
                let _ = writeln!(s, "{}", intersection_row(r));
            }
            Ok(s.into_bytes())
        }
        Format::Json => Ok(json_bytes(Value::Array(reps.iter().map(intersection_json).collect()))),
        Format::Text => Ok(reps.iter().map(intersection_text).collect::<String>().into_bytes()),
        _ => Err(unsupported("intersect", f)),
    }
}

fn network_cmd(constraints: &[String], f: Format) -> Result<Vec<u8>> {
    let cs: Vec<Constraint> = constraints.iter().map(|c| Constraint::parse(c)).collect::<Result<_>>()?;
    let sols = network_parameter(&cs)?;
    match f {
        Format::Csv => {
            let mut s = format!("{INTERSECTION_HEADER},realizable\n");
            for x in &sols {
                let _ = writeln!(s, "{},{}", intersection_row(&x.report), x.realizable);
            }
            Ok(s.into_bytes())
        }
        Format::Json => Ok(json_bytes(Value::Array(
            sols.iter()
                .map(|x| {
                    let mut v = intersection_json(&x.report);
                    v["realizable"] = json!(x.realizable);
                    v
                })
                .collect(),
        ))),
        Format::Text => Ok(sols
            .iter()
            .map(|x| format!("{}  realizable {}\n", intersection_text(&x.report).trim_end(), x.realizable))
            .collect::<String>()
            .into_bytes()),
        _ => Err(unsupported("network", f)),
    }
}

fn density_cmd(t: &str, bins: usize, iters: Option<usize>, f: Format) -> Result<Vec<u8>> {
    let h = approximate(params::t_float(t)?, bins, iters)?;
    match f {
        Format::Csv => {
            let mut s = String::from("x_left,x_right,mass\n");
            for (i, m) in h.mass.iter().enumerate() {
                let _ = writeln!(s, "{:.9},{:.9},{m:.12e}", i as f64 / bins as f64, (i + 1) as f64 / bins as f64);
            }
            Ok(s.into_bytes())
        }
        Format::Json => Ok(json_bytes(json!({"t": h.t, "bins": bins, "iterations": h.iterations, "mass": h.mass}))),
        Format::Text => {
            let mut s = format!("t {}  bins {bins}  iterations {}\n", h.t, h.iterations);
            let max = h.standardized().into_iter().fold(0.0, f64::max);
            let _ = writeln!(s, "max density {max:.6}");
            for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
                let _ = writeln!(s, "F({q}) = {:.9}", h.cdf(q));
            }
            Ok(s.into_bytes())
        }
        _ => Err(unsupported("density", f)),
    }
}

#[allow(clippy::too_many_arguments)]
fn grid_cmd(tmin: &str, tmax: &str, nt: usize, bins: usize, iters: Option<usize>, x: (f64, f64), vmax: f64, f: Format) -> Result<Vec<u8>> {
    if !(0.0..=1.0).contains(&x.0) || !(0.0..=1.0).contains(&x.1) || x.0 >= x.1 {
        return Err(Error::InvalidInput(format!("x window [{}, {}] is not inside [0,1]", x.0, x.1)));
    }
    if vmax.is_nan() || vmax <= 0.0 {
        return Err(Error::InvalidInput("vmax must be positive".into()));
    }
    let g = phi_grid(params::t_float(tmin)?, params::t_float(tmax)?, nt, bins, iters)?;
    let mut out = vec![];
    let io = |e: std::io::Error| Error::Internal(e.to_string());
    match f {
        Format::Pgm => write_pgm(&mut out, &g, x.0, x.1, vmax, false).map_err(io)?,
        Format::Pgm16 => write_pgm(&mut out, &g, x.0, x.1, vmax, true).map_err(io)?,
        Format::Ppm => write_ppm(&mut out, &g, x.0, x.1, vmax).map_err(io)?,
        Format::Csv => write_csv(&mut out, &g, x.0, x.1).map_err(io)?,
        Format::Text | Format::Json => {
            let r = g.bin_range(x.0, x.1);
            let mut best = (f64::MIN, 0.0, 0.0);
            for (i, t) in g.t_values.iter().enumerate() {
                for k in r.clone() {
                    let v = g.row(i)[k];
                    if v > best.0 {
                        best = (v, *t, g.x_center(k));
                    }
                }
            }
            if f == Format::Json {
                return Ok(json_bytes(json!({"nt": nt, "bins": bins, "max": best.0, "t_at_max": best.1, "x_at_max": best.2})));
            }
            let s = format!("{nt} parameters x {bins} bins; window maximum {:.6} at t = {:.6}, x = {:.6}\n", best.0, best.1, best.2);
            return Ok(s.into_bytes());
        }
        Format::Dot => return Err(unsupported("grid", f)),
    }
    Ok(out)
}

fn holes_cmd(b: &str, depth: usize, f: Format) -> Result<Vec<u8>> {
    let b = seq(b)?;
    let rho = hole_growth(&b)?;
    match f {
        Format::Json => {
            let h = holes(&b, depth)?;
            let words: Vec<String> = h.holes.iter().map(|w| w.to_string()).collect();
            let counts: Vec<String> = h.counts.iter().map(|c| c.to_string()).collect();
            Ok(json_bytes(json!({
                "b": b.to_string(),
                "depth": depth,
                "counts": counts,
                "holes": words,
                "growth_rate": [rho.enclosure.lo, rho.enclosure.hi],
            })))
        }
        Format::Csv | Format::Text => {
            if depth > bernlab::unique::MAX_HOLE_DEPTH {
                return Err(Error::ResourceCap(format!("depth {depth} exceeds {}", bernlab::unique::MAX_HOLE_DEPTH)));
            }
            let counts = hole_counts(&b, depth)?;
            let mut s = if f == Format::Csv { String::from("m,a_m\n") } else { format!("b {b}  growth rate {}\n", rho.enclosure) };
            for (m, c) in counts.iter().enumerate() {
                if f == Format::Csv {
                    let _ = writeln!(s, "{},{c}", m + 1);
                } else {
                    let _ = writeln!(s, "a_{:<3} {c}", m + 1);
                }
            }
            Ok(s.into_bytes())
        }
        _ => Err(unsupported("holes", f)),
    }
}

fn reports_out(cmd: &str, reports: &[TwoAddressReport], f: Format) -> Result<Vec<u8>> {
    match f {
        Format::Csv => {
            let mut s = format!("{}\n", TwoAddressReport::csv_header());
            for r in reports {
                let _ = writeln!(s, "{}", r.csv_row());
            }
            Ok(s.into_bytes())
        }
        // JSON lines
        Format::Json => Ok(reports.iter().map(|r| r.json() + "\n").collect::<String>().into_bytes()),
        Format::Text => Ok(reports
            .iter()
            .map(|r| {
                format!(
                    "t = {:.12}  y = {:.12}  {}  ({} | {})  class {}{}\n",
                    r.t.to_f64(),
                    r.y.to_f64(),
                    r.count.as_str(),
                    r.lower,
                    r.upper,
                    r.number_class.tag,
                    if r.verified { "" } else { "  unverified" }
                )
            })
            .collect::<String>()
            .into_bytes()),
        _ => Err(unsupported(cmd, f)),
    }
}
