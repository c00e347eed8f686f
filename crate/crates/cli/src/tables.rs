//! Text table files: `CELLMAP-TABLE v1 <kind> <group> <checksum>` followed
//! by tab-separated records. Lines starting with `#` are source notes and
//! blank lines are ignored; neither enters the checksum.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use cellmap_core::characters::table_from_rows;
use cellmap_core::exceptional::{KlTable, OrbitRow, OrbitTable, Tables};
use cellmap_core::invariants::GroupData;
use cellmap_core::label::Label;
use cellmap_core::orbits::OrbitData;
use cellmap_core::rootdata::{build_root_datum, CartanType};
use cellmap_core::weyl::WeylGroup;
use sha2::{Digest, Sha256};

use crate::{Failure, EXIT_DATA};

pub const MAGIC: &str = "CELLMAP-TABLE";
pub const VERSION: &str = "v1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Chartab,
    Orbits,
    Springer,
    Kl,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "chartab" => Some(Kind::Chartab),
            "orbits" => Some(Kind::Orbits),
            "springer" => Some(Kind::Springer),
            "kl" => Some(Kind::Kl),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Chartab => "chartab",
            Kind::Orbits => "orbits",
            Kind::Springer => "springer",
            Kind::Kl => "kl",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub fields: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub kind: Kind,
    pub group: CartanType,
    pub records: Vec<Record>,
    pub checksum: String,
    pub source_note: String,
    pub origin: String,
}

fn table_error(origin: &str, line: usize, msg: impl fmt::Display) -> Failure {
    if line == 0 {
        Failure::new(EXIT_DATA, format!("{origin}: {msg}"))
    } else {
        Failure::new(EXIT_DATA, format!("{origin}:{line}: {msg}"))
    }
}

/// Hex SHA-256 of the canonical serialization of a table body.
pub fn checksum(kind: Kind, group: CartanType, records: &[Vec<String>]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{kind} {group}\n"));
    for r in records {
        h.update(r.join("\t"));
        h.update("\n");
    }
    hex::encode(h.finalize())
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace())
}

impl TableFile {
    pub fn parse(text: &str, origin: &str) -> Result<TableFile, Failure> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| table_error(origin, 1, "empty file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != MAGIC || h[1] != VERSION {
            return Err(table_error(origin, 1, format!("header must be '{MAGIC} {VERSION} <kind> <group> <checksum>'")));
        }
        let kind = Kind::parse(h[2]).ok_or_else(|| table_error(origin, 1, format!("unknown kind '{}'", h[2])))?;
        let group = CartanType::parse(h[3]).map_err(|e| table_error(origin, 1, e))?;
        let mut records = Vec::new();
        let mut notes = Vec::new();
        for (i, raw) in lines {
            let line = i + 1;
            let l = raw.trim_end();
            if l.trim().is_empty() {
                continue;
            }
            if let Some(n) = l.strip_prefix('#') {
                notes.push(n.trim().to_string());
                continue;
            }
            let fields: Vec<String> = l.split('\t').map(|f| f.trim().to_string()).collect();
            if let Some(bad) = fields.iter().find(|f| !valid_token(f)) {
                return Err(table_error(origin, line, format!("field '{bad}' is not a bare token")));
            }
            check_shape(kind, &fields, records.first().map(|r: &Record| r.fields.len()))
                .map_err(|m| table_error(origin, line, m))?;
            records.push(Record { line, fields });
        }
        if records.is_empty() {
            return Err(table_error(origin, 0, "no records"));
        }
        let bodies: Vec<Vec<String>> = records.iter().map(|r| r.fields.clone()).collect();
        let sum = checksum(kind, group, &bodies);
        if !sum.eq_ignore_ascii_case(h[4]) {
            return Err(table_error(origin, 1, format!("checksum mismatch: header has {}, contents hash to {sum}", h[4])));
        }
        Ok(TableFile { kind, group, records, checksum: sum, source_note: notes.join("\n"), origin: origin.to_string() })
    }

    pub fn read(path: &Path) -> Result<TableFile, Failure> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| table_error(&origin, 0, e))?;
        TableFile::parse(&text, &origin)
    }

    /// Text form with a freshly computed checksum.
    pub fn render(kind: Kind, group: CartanType, note: &str, records: &[Vec<String>]) -> String {
        let mut out = format!("{MAGIC} {VERSION} {kind} {group} {}\n", checksum(kind, group, records));
        for n in note.lines() {
            out.push_str(&format!("# {n}\n"));
        }
        for r in records {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }

    fn err(&self, line: usize, msg: impl fmt::Display) -> Failure {
        table_error(&self.origin, line, msg)
    }
}

fn check_shape(kind: Kind, f: &[String], first_len: Option<usize>) -> Result<(), String> {
    match kind {
        Kind::Chartab => match first_len {
            None if f[0] != "classes" => Err("first chartab record must be 'classes' followed by class names".into()),
            None if f.len() < 2 => Err("no class names".into()),
            None => Ok(()),
            Some(n) if f.len() != n => Err(format!("expected {n} fields, found {}", f.len())),
            Some(_) => {
                Label::parse(&f[0]).map_err(|e| e.to_string())?;
                for v in &f[1..] {
                    v.parse::<i128>().map_err(|_| format!("'{v}' is not an integer"))?;
                }
                Ok(())
            }
        },
        Kind::Orbits => {
            if f.len() != 4 {
                return Err("orbit records are: name, dim, special (0/1), dual name".into());
            }
            f[1].parse::<u32>().map_err(|_| format!("'{}' is not a dimension", f[1]))?;
            if f[2] != "0" && f[2] != "1" {
                return Err(format!("special flag must be 0 or 1, found '{}'", f[2]));
            }
            Ok(())
        }
        Kind::Springer | Kind::Kl => {
            if f.len() != 2 {
                return Err(format!("{kind} records are: orbit, label"));
            }
            Ok(())
        }
    }
}

/// Registered tables keyed by `(kind, group)`.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    files: BTreeMap<(CartanType, Kind), TableFile>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("builtin:G2/chartab.tbl", include_str!("../tables/G2/chartab.tbl")),
    ("builtin:G2/orbits.tbl", include_str!("../tables/G2/orbits.tbl")),
    ("builtin:G2/springer.tbl", include_str!("../tables/G2/springer.tbl")),
    ("builtin:G2/kl.tbl", include_str!("../tables/G2/kl.tbl")),
];

impl Registry {
    /// The tables shipped with the binary.
    pub fn builtin() -> Registry {
        let mut r = Registry::default();
        for (origin, text) in BUILTIN {
            let f = TableFile::parse(text, origin).expect("shipped table parses");
            r.register(f, false).expect("shipped tables are distinct");
        }
        r
    }

    pub fn get(&self, group: CartanType, kind: Kind) -> Option<&TableFile> {
        self.files.get(&(group, kind))
    }

    pub fn files(&self) -> impl Iterator<Item = &TableFile> {
        self.files.values()
    }

    /// Register a file; a different checksum for an already registered
    /// `(kind, group)` is rejected unless `force`.
    pub fn register(&mut self, f: TableFile, force: bool) -> Result<(), Failure> {
        if let Some(old) = self.files.get(&(f.group, f.kind)) {
            if old.checksum != f.checksum && !force {
                return Err(f.err(
                    0,
                    format!("{} table for {} already registered from {} with a different checksum (use --force)", f.kind, f.group, old.origin),
                ));
            }
        }
        self.files.insert((f.group, f.kind), f);
        Ok(())
    }

    /// Register every `*.tbl` file below `dir`, in sorted path order.
    pub fn load_dir(&mut self, dir: &Path, force: bool) -> Result<usize, Failure> {
        let mut paths = Vec::new();
        collect(dir, &mut paths).map_err(|e| table_error(&dir.display().to_string(), 0, e))?;
        paths.sort();
        for p in &paths {
            self.register(TableFile::read(p)?, force)?;
        }
        Ok(paths.len())
    }

    /// Validate every registered table and assemble them for the core.
    pub fn tables(&self) -> Result<Tables, Failure> {
        let mut out = Tables::default();
        let groups: Vec<CartanType> = {
            let mut g: Vec<CartanType> = self.files.keys().map(|(g, _)| *g).collect();
            g.dedup();
            g
        };
        for g in &groups {
            if let Some(f) = self.get(*g, Kind::Chartab) {
                out.chartabs.push((*g, validate_chartab(f)?));
            }
        }
        for g in groups {
            let orbits = self.get(g, Kind::Orbits);
            let springer = self.get(g, Kind::Springer);
            let table = match (orbits, springer) {
                (Some(o), Some(s)) => validate_orbits(o, s, &out)?,
                (Some(o), None) => return Err(o.err(0, format!("orbits table for {g} needs a springer table"))),
                (None, Some(s)) => return Err(s.err(0, format!("springer table for {g} needs an orbits table"))),
                (None, None) => None,
            };
            if let Some(t) = table {
                out.orbits.push(t);
            }
            if let Some(k) = self.get(g, Kind::Kl) {
                let orbits = out
                    .orbit_table(g)
                    .ok_or_else(|| k.err(0, format!("kl table for {g} needs an orbits table")))?;
                out.kl.push(validate_kl(k, orbits)?);
            }
        }
        Ok(out)
    }
}

fn collect(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let p = entry?.path();
        if p.is_dir() {
            collect(&p, out)?;
        } else if p.extension().is_some_and(|e| e == "tbl") {
            out.push(p);
        }
    }
    Ok(())
}

fn weyl(f: &TableFile) -> Result<WeylGroup, Failure> {
    let d = build_root_datum(f.group).map_err(|e| f.err(0, e))?;
    WeylGroup::new(&d).map_err(|e| f.err(0, e))
}

fn validate_chartab(f: &TableFile) -> Result<cellmap_core::characters::CharTable, Failure> {
    let g = weyl(f)?;
    let header = &f.records[0];
    let names: Vec<String> = g.classes.iter().map(|c| c.label.to_string()).collect();
    let mut cols = Vec::new();
    for n in &names {
        let pos = header.fields[1..]
            .iter()
            .position(|h| h == n)
            .ok_or_else(|| f.err(header.line, format!("class {n} of {} is missing", f.group)))?;
        cols.push(pos + 1);
    }
    if header.fields.len() - 1 != names.len() {
        return Err(f.err(header.line, format!("{} has {} classes, header lists {}", f.group, names.len(), header.fields.len() - 1)));
    }
    let mut rows = Vec::new();
    for r in &f.records[1..] {
        let label = Label::parse(&r.fields[0]).map_err(|e| f.err(r.line, e))?;
        let values = cols.iter().map(|c| r.fields[*c].parse::<i128>().expect("checked on parse")).collect();
        rows.push((label, values));
    }
    table_from_rows(&g, rows).map_err(|e| f.err(0, format!("orthogonality check failed: {e}")))
}

fn validate_orbits(o: &TableFile, s: &TableFile, sofar: &Tables) -> Result<Option<OrbitTable>, Failure> {
    let d = build_root_datum(o.group).map_err(|e| o.err(0, e))?;
    let dim_n = 2 * d.num_positive() as u32;
    let mut rows: Vec<(usize, String, u32, bool, String)> = Vec::new();
    for r in &o.records {
        let name = r.fields[0].clone();
        if rows.iter().any(|x| x.1 == name) {
            return Err(o.err(r.line, format!("orbit {name} listed twice")));
        }
        let dim: u32 = r.fields[1].parse().expect("checked on parse");
        if dim > dim_n || (dim_n - dim) % 2 == 1 {
            return Err(o.err(r.line, format!("orbit {name} has impossible dimension {dim}")));
        }
        rows.push((r.line, name, dim, r.fields[2] == "1", r.fields[3].clone()));
    }
    let find = |n: &str| rows.iter().find(|x| x.1 == n);
    for (line, name, _, special, dual) in &rows {
        let dd = find(dual).ok_or_else(|| o.err(*line, format!("dual orbit {dual} is not listed")))?;
        if !dd.3 {
            return Err(o.err(*line, format!("dual of {name} is {dual}, which is not special")));
        }
        if *special && dd.4 != *name {
            return Err(o.err(*line, format!("duality is not an involution on specials: {name} -> {dual} -> {}", dd.4)));
        }
    }
    let specials: Vec<_> = rows.iter().filter(|x| x.3).collect();
    for a in &specials {
        for b in &specials {
            let (da, db) = (find(&a.4).unwrap().2, find(&b.4).unwrap().2);
            if a.2 < b.2 && da <= db {
                return Err(o.err(a.0, format!("duality does not reverse the order of {} and {}", a.1, b.1)));
            }
        }
    }
    let mut springer: BTreeMap<String, String> = BTreeMap::new();
    for r in &s.records {
        if find(&r.fields[0]).is_none() {
            return Err(s.err(r.line, format!("orbit {} is not in the orbits table", r.fields[0])));
        }
        if springer.insert(r.fields[0].clone(), r.fields[1].clone()).is_some() {
            return Err(s.err(r.line, format!("orbit {} listed twice", r.fields[0])));
        }
    }
    if let Some(missing) = rows.iter().find(|x| !springer.contains_key(&x.1)) {
        return Err(s.err(0, format!("total map violation: no Springer row for orbit {}", missing.1)));
    }
    let table = OrbitTable {
        ty: o.group,
        rows: rows
            .iter()
            .map(|(_, name, dim, special, _)| OrbitRow {
                name: name.clone(),
                dim: *dim,
                special: *special,
                springer: springer[name].clone(),
            })
            .collect(),
    };
    let data = GroupData::new(&d, &sofar.chartabs).map_err(|e| s.err(0, e))?;
    let probe = Tables { chartabs: sofar.chartabs.clone(), orbits: vec![table.clone()], kl: Vec::new() };
    OrbitData::new(&data.group, &data.table, &data.b, &probe).map_err(|e| s.err(0, e))?;
    Ok(Some(table))
}

fn validate_kl(k: &TableFile, orbits: &OrbitTable) -> Result<KlTable, Failure> {
    let g = weyl(k)?;
    let mut rows: Vec<(String, String)> = Vec::new();
    for r in &k.records {
        let (o, c) = (&r.fields[0], &r.fields[1]);
        if !orbits.rows.iter().any(|x| &x.name == o) {
            return Err(k.err(r.line, format!("orbit {o} is not in the orbits table")));
        }
        if !g.classes.iter().any(|x| x.label.to_string() == *c) {
            return Err(k.err(r.line, format!("class {c} is not a class of W({})", k.group)));
        }
        if rows.iter().any(|x| &x.0 == o) {
            return Err(k.err(r.line, format!("orbit {o} listed twice")));
        }
        rows.push((o.clone(), c.clone()));
    }
    if let Some(m) = orbits.rows.iter().find(|x| !rows.iter().any(|r| r.0 == x.name)) {
        return Err(k.err(0, format!("total map violation: no kl row for orbit {}", m.name)));
    }
    Ok(KlTable { ty: k.group, rows })
}
