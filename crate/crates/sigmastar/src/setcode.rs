//! Coding finite sets of strings, and ordered pairs of strings, as single
//! strings. A set code is a sequence of frames `t·a·w·a·t'` whose b-tally
//! markers strictly ascend and strictly dominate every b-run in the framed
//! payloads; the final marker is repeated to close the code. A pair code is
//! the fixed template `t·a·x·a·t·a·y·a·t` where `t` is the shortest b-tally
//! not occurring in `x·a·y`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::strings::{BTally, BinString, DIGIT_A, DIGIT_B};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("not a set code ({condition}): {input}")]
    NotASet { condition: String, input: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("not a pair code: {0}")]
    NotAPair(String),
}

/// Position of a frame within its code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FrameKind {
    First,
    Intermediate,
    Last,
}

/// One tally-delimited frame `t1 · payload · t2` with payload `a·w·a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frame {
    pub t1: BTally,
    pub payload: BinString,
    pub t2: BTally,
    pub kind: FrameKind,
}

impl Frame {
    /// The framed member string w, with payload a·w·a.
    pub fn core(&self) -> BinString {
        let d = self.payload.digits();
        BinString::from_bytes(d[1..d.len() - 1].to_vec())
    }
}

/// A parsed set code: the raw string together with its frame sequence
/// (empty exactly for the empty-set code `aa`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetCode {
    pub raw: BinString,
    pub frames: Vec<Frame>,
}

impl SetCode {
    /// Member strings, i.e. the payload cores, deduplicated.
    pub fn members(&self) -> BTreeSet<BinString> {
        self.frames.iter().map(Frame::core).collect()
    }

    /// The envelope tally closing the code, when there is one.
    pub fn envelope(&self) -> Option<&BTally> {
        self.frames.last().map(|f| &f.t2)
    }
}

impl fmt::Display for SetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.raw.fmt(f)
    }
}

/// The shortest b-tally that does not occur in `x`: one b longer than the
/// longest b-run of `x`.
pub fn min_nonoccurrent_tally(x: &BinString) -> BTally {
    BTally::of_len(x.max_b_run() + 1)
}

fn not_a_set(condition: &str, input: &BinString) -> SetError {
    SetError::NotASet {
        condition: condition.to_string(),
        input: input.to_string(),
    }
}

/// Maximal b-runs of `x` as (start, len) pairs.
fn b_runs(x: &BinString) -> Vec<(usize, usize)> {
    let d = x.digits();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < d.len() {
        if d[i] == DIGIT_B {
            let start = i;
            while i < d.len() && d[i] == DIGIT_B {
                i += 1;
            }
            runs.push((start, i - start));
        } else {
            i += 1;
        }
    }
    runs
}

/// Parses and validates a set code.
///
/// The scan recovers the frame partition (markers must strictly ascend, and
/// the closing marker repeats the last frame's), then the envelope
/// conditions are checked against the parsed structure: the envelope is a
/// longest tally, payloads have the `a·w·a` shape with b-runs strictly below
/// their marker, and markers/payload-cores determine each other uniquely.
pub fn parse_set(x: &BinString) -> Result<SetCode, SetError> {
    if x.digits() == [DIGIT_A, DIGIT_A] {
        return Ok(SetCode {
            raw: x.clone(),
            frames: Vec::new(),
        });
    }
    let d = x.digits();
    let runs = b_runs(x);
    if runs.is_empty() {
        return Err(not_a_set("no frame parse exists (no b-tally)", x));
    }
    // A first frame puts a marker at the very front, a last frame one at the
    // very end.
    if runs[0].0 != 0 {
        return Err(not_a_set("no first frame", x));
    }
    let (last_start, last_len) = *runs.last().unwrap();
    if last_start + last_len != d.len() {
        return Err(not_a_set("no last frame", x));
    }

    // Scan run by run: runs shorter than the current marker stay inside the
    // payload; the next run at least as long either opens the next frame
    // (strictly longer) or closes the code (equal, and must end the string).
    let mut markers: Vec<(usize, usize)> = vec![runs[0]];
    let mut closed = false;
    for &(start, len) in &runs[1..] {
        let (_, cur) = *markers.last().unwrap();
        if len < cur {
            continue; // payload-internal run
        }
        if closed {
            return Err(not_a_set("material after the closing marker", x));
        }
        if len > cur {
            markers.push((start, len));
        } else {
            // equal: closing marker, must terminate the string
            if start + len != d.len() {
                return Err(not_a_set("repeated marker does not close the code", x));
            }
            markers.push((start, len));
            closed = true;
        }
    }
    if !closed {
        return Err(not_a_set("no last frame (envelope marker not repeated)", x));
    }
    let n = markers.len() - 1; // number of frames
    if n == 0 {
        return Err(not_a_set("no first frame", x));
    }

    let mut frames = Vec::with_capacity(n);
    for i in 0..n {
        let (m_start, m_len) = markers[i];
        let (next_start, next_len) = markers[i + 1];
        let payload_start = m_start + m_len;
        if payload_start >= next_start {
            return Err(not_a_set("empty payload between markers", x));
        }
        let payload = BinString::from_bytes(d[payload_start..next_start].to_vec());
        let pd = payload.digits();
        if pd.len() < 3 || pd[0] != DIGIT_A || pd[pd.len() - 1] != DIGIT_A {
            return Err(not_a_set("payload is not of shape a·w·a", x));
        }
        // Pref: the frame's initial marker strictly dominates the payload's
        // b-runs (so the marker itself does not occur in the payload).
        if payload.max_b_run() >= m_len {
            return Err(not_a_set("marker occurs in its payload", x));
        }
        let kind = if i == n - 1 {
            FrameKind::Last
        } else if i == 0 {
            FrameKind::First
        } else {
            FrameKind::Intermediate
        };
        let t2_len = if i == n - 1 { m_len } else { next_len };
        if i == n - 1 && next_len != m_len {
            return Err(not_a_set("last frame markers differ", x));
        }
        frames.push(Frame {
            t1: BTally::of_len(m_len),
            payload,
            t2: BTally::of_len(t2_len),
            kind,
        });
    }

    // Envelope condition (a): the closing tally is a longest b-tally in x.
    let envelope_len = markers[n].1;
    if runs.iter().any(|&(_, len)| len > envelope_len) {
        return Err(not_a_set("envelope is not a longest tally", x));
    }
    // Conditions (d)/(e): initial markers and payload cores are in bijection.
    for i in 0..n {
        for j in i + 1..n {
            if frames[i].core() == frames[j].core() {
                return Err(not_a_set("one string framed under two markers", x));
            }
        }
    }
    // Markers strictly ascend by construction of the scan, which is what
    // the intermediate-frame dominance condition comes to for the partition.

    Ok(SetCode {
        raw: x.clone(),
        frames,
    })
}

/// The members of the set coded by `x`; fails on non-set inputs.
pub fn members(x: &BinString) -> Result<BTreeSet<BinString>, SetError> {
    parse_set(x).map(|code| code.members())
}

/// Encodes a finite set of strings canonically: members are deduplicated and
/// sorted (length, then lexicographic), payloads are `a·w·a`, and the
/// markers form the ladder `b^L, b^(L+1), …` with `L` one more than the
/// longest b-run over all payloads.
pub fn encode_set(ws: &[BinString]) -> SetCode {
    let members: BTreeSet<BinString> = ws.iter().cloned().collect();
    if members.is_empty() {
        let raw = BinString::from_bytes(vec![DIGIT_A, DIGIT_A]);
        return SetCode {
            raw,
            frames: Vec::new(),
        };
    }
    let base = 1 + members.iter().map(|w| w.max_b_run()).max().unwrap();
    let n = members.len();
    let mut bytes = Vec::new();
    let mut frames = Vec::with_capacity(n);
    for (i, w) in members.iter().enumerate() {
        let t1 = BTally::of_len(base + i);
        let t2 = if i == n - 1 {
            BTally::of_len(base + i)
        } else {
            BTally::of_len(base + i + 1)
        };
        let mut payload = vec![DIGIT_A];
        payload.extend_from_slice(w.digits());
        payload.push(DIGIT_A);
        bytes.extend(std::iter::repeat_n(DIGIT_B, base + i));
        bytes.extend_from_slice(&payload);
        frames.push(Frame {
            t1,
            payload: BinString::from_bytes(payload.clone()),
            t2,
            kind: if i == n - 1 {
                FrameKind::Last
            } else if i == 0 {
                FrameKind::First
            } else {
                FrameKind::Intermediate
            },
        });
    }
    bytes.extend(std::iter::repeat_n(DIGIT_B, base + n - 1));
    SetCode {
        raw: BinString::from_bytes(bytes),
        frames,
    }
}

/// Encodes the ordered pair (x, y) as `t·a·x·a·t·a·y·a·t` with `t` the
/// shortest b-tally not occurring in `x·a·y`.
pub fn encode_pair(x: &BinString, y: &BinString) -> BinString {
    let a = BinString::a();
    let xay = x.concat(&a).concat(y);
    let t = min_nonoccurrent_tally(&xay);
    let mut bytes = Vec::new();
    for part in [
        t.digits(),
        a.digits(),
        x.digits(),
        a.digits(),
        t.digits(),
        a.digits(),
        y.digits(),
        a.digits(),
        t.digits(),
    ] {
        bytes.extend_from_slice(part);
    }
    BinString::from_bytes(bytes)
}

/// Inverts [`encode_pair`]: takes the maximal leading b-run as the tally,
/// matches the exact template, and re-validates that the tally is the
/// shortest one not occurring in `x·a·y`. Non-canonical tallies are
/// rejected, so at most one decomposition exists.
pub fn decode_pair(z: &BinString) -> Result<(BinString, BinString), PairError> {
    let err = || PairError::NotAPair(z.to_string());
    let d = z.digits();
    if d[0] != DIGIT_B {
        return Err(err());
    }
    let t_len = d.iter().take_while(|&&c| c == DIGIT_B).count();
    // The three tally occurrences are the only runs of length >= t_len.
    let occurrences: Vec<(usize, usize)> = b_runs(z)
        .into_iter()
        .filter(|&(_, len)| len >= t_len)
        .collect();
    if occurrences.len() != 3 {
        return Err(err());
    }
    let [(s0, l0), (s1, l1), (s2, l2)] = occurrences[..] else {
        return Err(err());
    };
    if l0 != t_len || l1 != t_len || l2 != t_len {
        return Err(err());
    }
    if s0 != 0 || s2 + l2 != d.len() {
        return Err(err());
    }
    // Template: t a x a t a y a t
    let seg1 = &d[t_len..s1];
    let seg2 = &d[s1 + t_len..s2];
    for seg in [seg1, seg2] {
        if seg.len() < 3 || seg[0] != DIGIT_A || seg[seg.len() - 1] != DIGIT_A {
            return Err(err());
        }
    }
    let x = BinString::from_bytes(seg1[1..seg1.len() - 1].to_vec());
    let y = BinString::from_bytes(seg2[1..seg2.len() - 1].to_vec());
    let xay = x.concat(&BinString::a()).concat(&y);
    if min_nonoccurrent_tally(&xay).len() != t_len {
        return Err(err());
    }
    Ok((x, y))
}

/// Direct reading of the pair predicate: `z = t·a·x·a·t·a·y·a·t` for the
/// shortest tally `t` not occurring in `x·a·y`. Used as the independent
/// check that decoding accepts exactly the pair codes.
pub fn pair_holds(x: &BinString, y: &BinString, z: &BinString) -> bool {
    encode_pair(x, y) == *z
}
