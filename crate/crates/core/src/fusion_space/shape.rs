use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FusionError;

/// A rooted binary splitting tree with ordered leaves.
///
/// Every vertex is identified by the half-open interval of leaves above it,
/// which stays meaningful across F-moves (only the moved vertex changes span).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

/// Direction of a reassociation at one vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assoc {
    /// `((X Y) Z) -> (X (Y Z))`
    LeftToRight,
    /// `(X (Y Z)) -> ((X Y) Z)`
    RightToLeft,
}

/// An F-move at the vertex spanning leaves `span.0 .. span.1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FMove {
    pub span: (usize, usize),
    pub dir: Assoc,
}

impl FMove {
    pub fn inverse(self, shape: &TreeShape) -> Result<FMove, FusionError> {
        shape.apply(self)?;
        Ok(FMove {
            span: self.span,
            dir: match self.dir {
                Assoc::LeftToRight => Assoc::RightToLeft,
                Assoc::RightToLeft => Assoc::LeftToRight,
            },
        })
    }
}

impl TreeShape {
    pub fn leaf() -> Self {
        TreeShape::Leaf
    }

    pub fn join(l: TreeShape, r: TreeShape) -> Self {
        TreeShape::Node(Box::new(l), Box::new(r))
    }

    /// Left-leaning caterpillar `((((x x) x) x) ...)` with `n >= 1` leaves.
    pub fn caterpillar(n: usize) -> Self {
        assert!(n >= 1, "a tree needs at least one leaf");
        (1..n).fold(TreeShape::Leaf, |t, _| TreeShape::join(t, TreeShape::Leaf))
    }

    /// Right-leaning caterpillar `(x (x (x ...)))`.
    pub fn right_caterpillar(n: usize) -> Self {
        assert!(n >= 1, "a tree needs at least one leaf");
        (1..n).fold(TreeShape::Leaf, |t, _| TreeShape::join(TreeShape::Leaf, t))
    }

    /// `((x x)(x x))`: the one-qudit tree with inner labels `x`, `y`.
    pub fn paired4() -> Self {
        let pair = || TreeShape::join(TreeShape::Leaf, TreeShape::Leaf);
        TreeShape::join(pair(), pair())
    }

    /// Two one-qudit branches side by side: `(((x x)(x x))((x x)(x x)))`.
    pub fn two_branch8() -> Self {
        TreeShape::join(Self::paired4(), Self::paired4())
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => l.n_leaves() + r.n_leaves(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeShape::Leaf)
    }

    /// Spans of all internal vertices in post-order; the root `(0, n)` is last.
    pub fn internal_spans(&self) -> Vec<(usize, usize)> {
        fn go(t: &TreeShape, lo: usize, out: &mut Vec<(usize, usize)>) -> usize {
            match t {
                TreeShape::Leaf => lo + 1,
                TreeShape::Node(l, r) => {
                    let mid = go(l, lo, out);
                    let hi = go(r, mid, out);
                    out.push((lo, hi));
                    hi
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Spans of the internal edges, i.e. internal vertices other than the root.
    /// This is the coordinate order of a labeling.
    pub fn edge_spans(&self) -> Vec<(usize, usize)> {
        let mut s = self.internal_spans();
        s.pop();
        s
    }

    /// The child spans of the vertex at `span`, if it is internal.
    pub fn children(&self, span: (usize, usize)) -> Option<((usize, usize), (usize, usize))> {
        let sub = self.subtree(span)?;
        match sub {
            TreeShape::Leaf => None,
            TreeShape::Node(l, _) => {
                let mid = span.0 + l.n_leaves();
                Some(((span.0, mid), (mid, span.1)))
            }
        }
    }

    /// The subtree sitting on the leaves `span`, if that span is a vertex.
    pub fn subtree(&self, span: (usize, usize)) -> Option<&TreeShape> {
        let mut t = self;
        let (mut lo, mut hi) = (0, self.n_leaves());
        loop {
            if (lo, hi) == span {
                return Some(t);
            }
            match t {
                TreeShape::Leaf => return None,
                TreeShape::Node(l, r) => {
                    let mid = lo + l.n_leaves();
                    if span.1 <= mid && span.0 >= lo {
                        t = l;
                        hi = mid;
                    } else if span.0 >= mid && span.1 <= hi {
                        t = r;
                        lo = mid;
                    } else {
                        return None;
                    }
                }
            }
        }
    }

    fn subtree_mut(&mut self, span: (usize, usize)) -> Option<&mut TreeShape> {
        let n = self.n_leaves();
        let mut t = self;
        let (mut lo, mut hi) = (0, n);
        loop {
            if (lo, hi) == span {
                return Some(t);
            }
            match t {
                TreeShape::Leaf => return None,
                TreeShape::Node(l, r) => {
                    let mid = lo + l.n_leaves();
                    if span.1 <= mid && span.0 >= lo {
                        t = l;
                        hi = mid;
                    } else if span.0 >= mid && span.1 <= hi {
                        t = r;
                        lo = mid;
                    } else {
                        return None;
                    }
                }
            }
        }
    }

    /// Whether leaves `i` and `i + 1` meet at a common vertex.
    pub fn has_pair(&self, i: usize) -> bool {
        self.subtree((i, i + 2)).is_some_and(|t| !t.is_leaf())
    }

    /// Every F-move available on this shape, in a fixed order.
    pub fn moves(&self) -> Vec<FMove> {
        let mut out = Vec::new();
        for span in self.internal_spans() {
            if let Some(TreeShape::Node(l, r)) = self.subtree(span) {
                if !l.is_leaf() {
                    out.push(FMove { span, dir: Assoc::LeftToRight });
                }
                if !r.is_leaf() {
                    out.push(FMove { span, dir: Assoc::RightToLeft });
                }
            }
        }
        out
    }

    /// The shape after the move, together with the span of the inner edge it
    /// removes and the span of the inner edge it creates.
    pub fn apply(&self, mv: FMove) -> Result<(TreeShape, (usize, usize), (usize, usize)), FusionError> {
        let mut out = self.clone();
        let bad = || FusionError::BadMove(format!("{mv:?} on {self}"));
        let t = out.subtree_mut(mv.span).ok_or_else(bad)?;
        let (lo, hi) = mv.span;
        let (old, new) = match (std::mem::replace(t, TreeShape::Leaf), mv.dir) {
            (TreeShape::Node(xy, z), Assoc::LeftToRight) => match *xy {
                TreeShape::Node(x, y) => {
                    let nx = x.n_leaves();
                    let ny = y.n_leaves();
                    *t = TreeShape::Node(x, Box::new(TreeShape::Node(y, z)));
                    ((lo, lo + nx + ny), (lo + nx, hi))
                }
                leaf => {
                    *t = TreeShape::Node(Box::new(leaf), z);
                    return Err(bad());
                }
            },
            (TreeShape::Node(x, yz), Assoc::RightToLeft) => match *yz {
                TreeShape::Node(y, z) => {
                    let nx = x.n_leaves();
                    let ny = y.n_leaves();
                    *t = TreeShape::Node(Box::new(TreeShape::Node(x, y)), z);
                    ((lo + nx, hi), (lo, lo + nx + ny))
                }
                leaf => {
                    *t = TreeShape::Node(x, Box::new(leaf));
                    return Err(bad());
                }
            },
            (TreeShape::Leaf, _) => return Err(bad()),
        };
        Ok((out, old, new))
    }

    /// Shortest sequence of F-moves (breadth first, ties broken by the fixed
    /// move order) from `self` to any shape satisfying `goal`.
    pub fn route(&self, goal: impl Fn(&TreeShape) -> bool) -> Vec<FMove> {
        use std::collections::{HashMap, VecDeque};
        if goal(self) {
            return Vec::new();
        }
        let mut prev: HashMap<TreeShape, (TreeShape, FMove)> = HashMap::new();
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(s) = queue.pop_front() {
            for mv in s.moves() {
                let (t, _, _) = s.apply(mv).expect("listed moves apply");
                if t == *self || prev.contains_key(&t) {
                    continue;
                }
                prev.insert(t.clone(), (s.clone(), mv));
                if goal(&t) {
                    let mut path = Vec::new();
                    let mut cur = t;
                    while cur != *self {
                        let (p, m) = prev[&cur].clone();
                        path.push(m);
                        cur = p;
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(t);
            }
        }
        unreachable!("every shape with n leaves reaches every other")
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => write!(f, "*"),
            TreeShape::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeShape({self})")
    }
}

impl FromStr for TreeShape {
    type Err = FusionError;

    /// Parses strings such as `((**)(**))`; any non-parenthesis character is a leaf
    /// and whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, FusionError> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || FusionError::MalformedShape(s.to_string());
        fn parse(t: &[char], pos: &mut usize) -> Option<TreeShape> {
            match t.get(*pos)? {
                '(' => {
                    *pos += 1;
                    let l = parse(t, pos)?;
                    let r = parse(t, pos)?;
                    if t.get(*pos) != Some(&')') {
                        return None;
                    }
                    *pos += 1;
                    Some(TreeShape::join(l, r))
                }
                ')' => None,
                _ => {
                    *pos += 1;
                    Some(TreeShape::Leaf)
                }
            }
        }
        let mut pos = 0;
        let t = parse(&toks, &mut pos).ok_or_else(err)?;
        if pos != toks.len() {
            return Err(err());
        }
        Ok(t)
    }
}

impl Serialize for TreeShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TreeShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
