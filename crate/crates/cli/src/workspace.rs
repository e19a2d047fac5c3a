//! The workspace file format: named sections declaring groups, explicit
//! models, Hodge data, triple-node trees, and verification jobs. Parsing is
//! total — the first offending token is reported with its line and column —
//! and serialization is canonical, so parse → serialize → parse is the
//! identity on structures.

use std::collections::BTreeMap;
use std::fmt;

use orbispec_core::hodge::parse_hodge_row;
use orbispec_core::orbifold::{Child, Dimension, OrbifoldError};
use orbispec_core::rational::{rat_from_str, rat_to_string};
use orbispec_core::{
    EquivariantHd, ExplicitGSet, FiniteGroup, MixedHodgeEigenDatum, Rat, TripleNode,
};

/// A parse or resolution failure, with its location when known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WorkspaceError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl WorkspaceError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        WorkspaceError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for WorkspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
        } else {
            write!(f, "{}", self.msg)
        }
    }
}

impl std::error::Error for WorkspaceError {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupDecl {
    pub name: String,
    pub order: usize,
    pub table: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetDecl {
    pub name: String,
    pub points: usize,
    pub group: String,
    /// Image vectors per non-identity element index, sorted by element.
    pub perms: Vec<(usize, Vec<usize>)>,
    pub phi: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeDecl {
    pub name: String,
    pub rows: Vec<MixedHodgeEigenDatum>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChildTarget {
    SelfRef,
    Node(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChildDecl {
    pub class: usize,
    pub beta: Rat,
    pub target: ChildTarget,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodeDecl {
    pub name: String,
    pub dim: Option<u32>,
    pub group: String,
    pub rows: Vec<MixedHodgeEigenDatum>,
    pub children: Vec<ChildDecl>,
    pub depth: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JobDecl {
    pub name: String,
    pub command: String,
    pub settings: BTreeMap<String, String>,
}

/// A parsed workspace file.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Workspace {
    pub groups: Vec<GroupDecl>,
    pub sets: Vec<SetDecl>,
    pub hodge: Vec<HodgeDecl>,
    pub nodes: Vec<NodeDecl>,
    pub jobs: Vec<JobDecl>,
}

fn col_of(line: &str, token: &str) -> usize {
    line.find(token).map_or(1, |i| i + 1)
}

fn parse_usize(word: &str, line_no: usize, line: &str) -> Result<usize, WorkspaceError> {
    word.parse()
        .map_err(|_| WorkspaceError::at(line_no, col_of(line, word), format!("expected a nonnegative integer, found `{word}`")))
}

enum Section {
    Group(GroupDecl),
    Set(SetDecl),
    Hodge(HodgeDecl),
    Node(NodeDecl),
    Job(JobDecl),
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, WorkspaceError> {
        let mut ws = Workspace::default();
        let mut current: Option<Section> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('[') {
                let header = rest.strip_suffix(']').ok_or_else(|| {
                    WorkspaceError::at(line_no, line.len(), "unterminated section header")
                })?;
                let mut parts = header.split_whitespace();
                let kind = parts.next().unwrap_or("");
                let name = parts.next().ok_or_else(|| {
                    WorkspaceError::at(line_no, col_of(line, kind), "section header needs a name")
                })?;
                if parts.next().is_some() {
                    return Err(WorkspaceError::at(
                        line_no,
                        1,
                        "section header has trailing tokens",
                    ));
                }
                ws.finish(current.take());
                current = Some(match kind {
                    "group" => Section::Group(GroupDecl {
                        name: name.to_string(),
                        order: 0,
                        table: Vec::new(),
                    }),
                    "explicit-set" => Section::Set(SetDecl {
                        name: name.to_string(),
                        points: 0,
                        group: String::new(),
                        perms: Vec::new(),
                        phi: Vec::new(),
                    }),
                    "hodge-data" => Section::Hodge(HodgeDecl {
                        name: name.to_string(),
                        rows: Vec::new(),
                    }),
                    "node" => Section::Node(NodeDecl {
                        name: name.to_string(),
                        dim: None,
                        group: String::new(),
                        rows: Vec::new(),
                        children: Vec::new(),
                        depth: None,
                    }),
                    "job" => Section::Job(JobDecl {
                        name: name.to_string(),
                        command: String::new(),
                        settings: BTreeMap::new(),
                    }),
                    other => {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, other),
                            format!("unknown section kind `{other}`"),
                        ))
                    }
                });
                continue;
            }
            let section = current.as_mut().ok_or_else(|| {
                WorkspaceError::at(line_no, 1, "content before the first section header")
            })?;
            let mut words = trimmed.split_whitespace();
            let key = words.next().unwrap();
            match section {
                Section::Group(g) => match key {
                    "order" => {
                        let w = words.next().ok_or_else(|| {
                            WorkspaceError::at(line_no, line.len(), "order needs a value")
                        })?;
                        g.order = parse_usize(w, line_no, line)?;
                    }
                    "table" => {
                        for w in words.by_ref() {
                            g.table.push(parse_usize(w, line_no, line)? as u32);
                        }
                    }
                    other => {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, other),
                            format!("unknown group field `{other}`"),
                        ))
                    }
                },
                Section::Set(s) => match key {
                    "points" => {
                        let w = words.next().ok_or_else(|| {
                            WorkspaceError::at(line_no, line.len(), "points needs a value")
                        })?;
                        s.points = parse_usize(w, line_no, line)?;
                    }
                    "group" => {
                        s.group = words
                            .next()
                            .ok_or_else(|| {
                                WorkspaceError::at(line_no, line.len(), "group needs a name")
                            })?
                            .to_string();
                    }
                    "perm" => {
                        let g = parse_usize(
                            words.next().ok_or_else(|| {
                                WorkspaceError::at(line_no, line.len(), "perm needs an element index")
                            })?,
                            line_no,
                            line,
                        )?;
                        let images = words
                            .map(|w| parse_usize(w, line_no, line))
                            .collect::<Result<Vec<_>, _>>()?;
                        s.perms.push((g, images));
                    }
                    "phi" => {
                        s.phi = words
                            .map(|w| parse_usize(w, line_no, line))
                            .collect::<Result<Vec<_>, _>>()?;
                    }
                    other => {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, other),
                            format!("unknown explicit-set field `{other}`"),
                        ))
                    }
                },
                Section::Hodge(h) => match key {
                    "row" => {
                        let rest = trimmed["row".len()..].trim();
                        let datum = parse_hodge_row(rest).ok_or_else(|| {
                            WorkspaceError::at(
                                line_no,
                                col_of(line, rest),
                                format!("malformed hodge row `{rest}` (expected k,p,q,alpha,dim)"),
                            )
                        })?;
                        h.rows.push(datum);
                    }
                    other => {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, other),
                            format!("unknown hodge-data field `{other}`"),
                        ))
                    }
                },
                Section::Node(n) => match key {
                    "dim" => {
                        let w = words.next().ok_or_else(|| {
                            WorkspaceError::at(line_no, line.len(), "dim needs a value")
                        })?;
                        n.dim = Some(parse_usize(w, line_no, line)? as u32);
                    }
                    "group" => {
                        n.group = words
                            .next()
                            .ok_or_else(|| {
                                WorkspaceError::at(line_no, line.len(), "group needs a name")
                            })?
                            .to_string();
                    }
                    "depth" => {
                        let w = words.next().ok_or_else(|| {
                            WorkspaceError::at(line_no, line.len(), "depth needs a value")
                        })?;
                        n.depth = Some(parse_usize(w, line_no, line)?);
                    }
                    "hodge" => {
                        let rest = trimmed["hodge".len()..].trim();
                        let datum = parse_hodge_row(rest).ok_or_else(|| {
                            WorkspaceError::at(
                                line_no,
                                col_of(line, rest),
                                format!("malformed hodge row `{rest}` (expected k,p,q,alpha,dim)"),
                            )
                        })?;
                        n.rows.push(datum);
                    }
                    "child" => {
                        let mut class = None;
                        let mut beta = None;
                        let mut target = None;
                        let mut words = words.peekable();
                        while let Some(w) = words.next() {
                            if let Some(v) = w.strip_prefix("class=") {
                                class = Some(parse_usize(v, line_no, line)?);
                            } else if let Some(v) = w.strip_prefix("beta=") {
                                beta = Some(rat_from_str(v).ok_or_else(|| {
                                    WorkspaceError::at(
                                        line_no,
                                        col_of(line, v),
                                        format!("malformed rational `{v}`"),
                                    )
                                })?);
                            } else if w == "self" {
                                target = Some(ChildTarget::SelfRef);
                            } else if w == "node" {
                                let name = words.next().ok_or_else(|| {
                                    WorkspaceError::at(line_no, line.len(), "child node needs a name")
                                })?;
                                target = Some(ChildTarget::Node(name.to_string()));
                            } else {
                                return Err(WorkspaceError::at(
                                    line_no,
                                    col_of(line, w),
                                    format!("unknown child token `{w}`"),
                                ));
                            }
                        }
                        let (class, beta, target) = match (class, beta, target) {
                            (Some(c), Some(b), Some(t)) => (c, b, t),
                            _ => {
                                return Err(WorkspaceError::at(
                                    line_no,
                                    1,
                                    "child needs class=, beta=, and a target (self or node <name>)",
                                ))
                            }
                        };
                        n.children.push(ChildDecl { class, beta, target });
                    }
                    other => {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, other),
                            format!("unknown node field `{other}`"),
                        ))
                    }
                },
                Section::Job(j) => {
                    let value: Vec<&str> = words.collect();
                    if value.is_empty() {
                        return Err(WorkspaceError::at(
                            line_no,
                            col_of(line, key),
                            format!("job field `{key}` needs a value"),
                        ));
                    }
                    let value = value.join(" ");
                    if key == "command" {
                        j.command = value;
                    } else {
                        j.settings.insert(key.to_string(), value);
                    }
                }
            }
        }
        ws.finish(current.take());
        ws.validate()?;
        Ok(ws)
    }

    fn finish(&mut self, section: Option<Section>) {
        match section {
            Some(Section::Group(g)) => self.groups.push(g),
            Some(Section::Set(mut s)) => {
                s.perms.sort_by_key(|(g, _)| *g);
                self.sets.push(s);
            }
            Some(Section::Hodge(h)) => self.hodge.push(h),
            Some(Section::Node(n)) => self.nodes.push(n),
            Some(Section::Job(j)) => self.jobs.push(j),
            None => {}
        }
    }

    fn validate(&self) -> Result<(), WorkspaceError> {
        let err = |msg: String| WorkspaceError::at(0, 0, msg);
        for s in &self.sets {
            if self.group(&s.group).is_none() {
                return Err(err(format!(
                    "explicit-set {} references unknown group `{}`",
                    s.name, s.group
                )));
            }
        }
        for n in &self.nodes {
            if self.group(&n.group).is_none() {
                return Err(err(format!(
                    "node {} references unknown group `{}`",
                    n.name, n.group
                )));
            }
            for c in &n.children {
                if let ChildTarget::Node(target) = &c.target {
                    if !self.nodes.iter().any(|m| &m.name == target) {
                        return Err(err(format!(
                            "node {} references unknown child node `{target}`",
                            n.name
                        )));
                    }
                }
            }
        }
        for j in &self.jobs {
            if j.command.is_empty() {
                return Err(err(format!("job {} has no command", j.name)));
            }
        }
        Ok(())
    }

    pub fn group(&self, name: &str) -> Option<&GroupDecl> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn set(&self, name: &str) -> Option<&SetDecl> {
        self.sets.iter().find(|s| s.name == name)
    }

    pub fn hodge_data(&self, name: &str) -> Option<&HodgeDecl> {
        self.hodge.iter().find(|h| h.name == name)
    }

    pub fn node(&self, name: &str) -> Option<&NodeDecl> {
        self.nodes.iter().find(|n| n.name == name)
    }

    /// Materializes a declared group, verifying the table axioms.
    pub fn build_group(&self, name: &str) -> Result<FiniteGroup, WorkspaceError> {
        let decl = self
            .group(name)
            .ok_or_else(|| WorkspaceError::at(0, 0, format!("unknown group `{name}`")))?;
        FiniteGroup::from_table(decl.order, decl.table.clone())
            .map_err(|e| WorkspaceError::at(0, 0, format!("group {name}: {e}")))
    }

    /// Materializes a declared explicit model.
    pub fn build_set(&self, name: &str) -> Result<ExplicitGSet, WorkspaceError> {
        let decl = self
            .set(name)
            .ok_or_else(|| WorkspaceError::at(0, 0, format!("unknown explicit-set `{name}`")))?;
        let group = self.build_group(&decl.group)?;
        let mut action: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
        action[group.identity()] = (0..decl.points).collect();
        for (g, images) in &decl.perms {
            if *g >= group.order() {
                return Err(WorkspaceError::at(
                    0,
                    0,
                    format!("explicit-set {name}: perm index {g} out of range"),
                ));
            }
            action[*g] = images.clone();
        }
        if let Some(g) = action.iter().position(Vec::is_empty) {
            if decl.points > 0 {
                return Err(WorkspaceError::at(
                    0,
                    0,
                    format!("explicit-set {name}: no perm declared for element {g}"),
                ));
            }
        }
        ExplicitGSet::new(decl.points, group, action, decl.phi.clone())
            .map_err(|e| WorkspaceError::at(0, 0, format!("explicit-set {name}: {e}")))
    }

    /// Materializes a declared node tree, resolving child references.
    pub fn build_node(&self, name: &str) -> Result<TripleNode, WorkspaceError> {
        self.build_node_rec(name, &mut Vec::new())
    }

    fn build_node_rec(&self, name: &str, stack: &mut Vec<String>) -> Result<TripleNode, WorkspaceError> {
        if stack.iter().any(|s| s == name) {
            return Err(WorkspaceError::at(
                0,
                0,
                format!("node reference cycle through `{name}`"),
            ));
        }
        let decl = self
            .node(name)
            .ok_or_else(|| WorkspaceError::at(0, 0, format!("unknown node `{name}`")))?;
        stack.push(name.to_string());
        let group = self.build_group(&decl.group)?;
        let quotient = EquivariantHd::from_data(&decl.rows);
        let mut children = std::collections::BTreeMap::new();
        let mut min_child_depth: Option<usize> = None;
        for c in &decl.children {
            let child = match &c.target {
                ChildTarget::SelfRef => Child::SelfMarker,
                ChildTarget::Node(target) => {
                    let node = self.build_node_rec(target, stack)?;
                    min_child_depth =
                        Some(min_child_depth.map_or(node.depth(), |d| d.min(node.depth())));
                    Child::Node(Box::new(node))
                }
            };
            children.insert((c.class, c.beta), child);
        }
        stack.pop();
        let depth = decl
            .depth
            .unwrap_or_else(|| min_child_depth.map_or(3, |d| d + 1));
        let dim = decl.dim.map_or(Dimension::Mixed, Dimension::Pure);
        TripleNode::new(dim, group, quotient, children, depth).map_err(|e: OrbifoldError| {
            WorkspaceError::at(0, 0, format!("node {name}: {e}"))
        })
    }
}

fn hodge_row_text(d: &MixedHodgeEigenDatum) -> String {
    format!(
        "{},{},{},{},{}",
        d.k,
        d.p,
        d.q,
        rat_to_string(d.alpha.representative()),
        d.dim
    )
}

impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            writeln!(f, "[group {}]", g.name)?;
            writeln!(f, "order {}", g.order)?;
            let table: Vec<String> = g.table.iter().map(u32::to_string).collect();
            writeln!(f, "table {}", table.join(" "))?;
            writeln!(f)?;
        }
        for s in &self.sets {
            writeln!(f, "[explicit-set {}]", s.name)?;
            writeln!(f, "points {}", s.points)?;
            writeln!(f, "group {}", s.group)?;
            for (g, images) in &s.perms {
                let imgs: Vec<String> = images.iter().map(usize::to_string).collect();
                writeln!(f, "perm {} {}", g, imgs.join(" "))?;
            }
            let phi: Vec<String> = s.phi.iter().map(usize::to_string).collect();
            writeln!(f, "phi {}", phi.join(" "))?;
            writeln!(f)?;
        }
        for h in &self.hodge {
            writeln!(f, "[hodge-data {}]", h.name)?;
            for row in &h.rows {
                writeln!(f, "row {}", hodge_row_text(row))?;
            }
            writeln!(f)?;
        }
        for n in &self.nodes {
            writeln!(f, "[node {}]", n.name)?;
            if let Some(d) = n.dim {
                writeln!(f, "dim {d}")?;
            }
            writeln!(f, "group {}", n.group)?;
            if let Some(d) = n.depth {
                writeln!(f, "depth {d}")?;
            }
            for row in &n.rows {
                writeln!(f, "hodge {}", hodge_row_text(row))?;
            }
            for c in &n.children {
                let target = match &c.target {
                    ChildTarget::SelfRef => "self".to_string(),
                    ChildTarget::Node(name) => format!("node {name}"),
                };
                writeln!(
                    f,
                    "child class={} beta={} {}",
                    c.class,
                    rat_to_string(c.beta),
                    target
                )?;
            }
            writeln!(f)?;
        }
        for j in &self.jobs {
            writeln!(f, "[job {}]", j.name)?;
            writeln!(f, "command {}", j.command)?;
            for (k, v) in &j.settings {
                writeln!(f, "{k} {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a comment
[group C2]
order 2
table 0 1 1 0

[explicit-set z2]
points 2
group C2
perm 1 1 0
phi 1 0

[hodge-data V]
row 0,0,0,0,1
row 0,0,0,1/2,1

[node Origin]
dim 0
group C2
depth 0
hodge 0,0,0,0,1

[node L]
dim 1
group C2
hodge 2,1,1,0,1
child class=0 beta=0 self
child class=1 beta=1/2 node Origin

[job t2]
command verify
fixture z2
k 1
";

    #[test]
    fn parse_and_round_trip() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        assert_eq!(ws.groups.len(), 1);
        assert_eq!(ws.sets.len(), 1);
        assert_eq!(ws.hodge[0].rows.len(), 2);
        assert_eq!(ws.nodes.len(), 2);
        assert_eq!(ws.jobs[0].command, "verify");
        let round = Workspace::parse(&ws.to_string()).unwrap();
        assert_eq!(ws, round);
    }

    #[test]
    fn build_objects() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        let set = ws.build_set("z2").unwrap();
        assert_eq!(set.points(), 2);
        let node = ws.build_node("L").unwrap();
        assert_eq!(node.depth(), 1);
        assert!(node.e_k(1).is_ok());
    }

    #[test]
    fn errors_carry_location() {
        let bad = "[group G]\norder x\n";
        let err = Workspace::parse(bad).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 7);

        let unknown = "[widget W]\n";
        let err = Workspace::parse(unknown).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.msg.contains("widget"));
    }

    #[test]
    fn unresolved_reference_is_rejected() {
        let bad = "[explicit-set s]\npoints 1\ngroup missing\nphi 0\n";
        let err = Workspace::parse(bad).unwrap_err();
        assert!(err.msg.contains("missing"));
    }
}
