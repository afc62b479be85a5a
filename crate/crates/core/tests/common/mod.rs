//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pseudo_lidar_eval::detection::{ApMode, Detection, ObjectLabel};
use pseudo_lidar_eval::geometry::{Box3D, Point2, Point3, RotatedBevBox};
use pseudo_lidar_eval::pseudolidar::DepthMap;

// ---------------------------------------------------------------- geometry

/// Stratified Monte-Carlo estimate of the BEV intersection area: one
/// jittered sample per cell of a `grid × grid` lattice over the joint
/// bounding rectangle. Returns (estimate, rectangle area).
pub fn mc_intersection(a: &RotatedBevBox, b: &RotatedBevBox, grid: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (ca, cb) = (a.corners(), b.corners());
    let all = ca.iter().chain(cb.iter());
    let (mut x0, mut x1, mut z0, mut z1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        z0 = z0.min(p.y);
        z1 = z1.max(p.y);
    }
    let (dx, dz) = ((x1 - x0) / grid as f64, (z1 - z0) / grid as f64);
    let mut hits = 0u64;
    for i in 0..grid {
        for j in 0..grid {
            let x = x0 + (i as f64 + rng.gen::<f64>()) * dx;
            let z = z0 + (j as f64 + rng.gen::<f64>()) * dz;
            if inside_convex(&ca, x, z) && inside_convex(&cb, x, z) {
                hits += 1;
            }
        }
    }
    let area = (x1 - x0) * (z1 - z0);
    (area * hits as f64 / (grid * grid) as f64, area)
}

/// Point-in-convex-polygon by consistent cross-product signs.
pub fn inside_convex(poly: &[Point2], x: f64, z: f64) -> bool {
    let n = poly.len();
    let (mut pos, mut neg) = (false, false);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let cross = (q.x - p.x) * (z - p.y) - (q.y - p.y) * (x - p.x);
        pos |= cross > 0.0;
        neg |= cross < 0.0;
    }
    !(pos && neg)
}

/// IoU of two yaw-0 boxes from interval overlaps.
pub fn axis_aligned_bev_iou(a: &Box3D, b: &Box3D) -> f64 {
    let inter = overlap(a.location.x, a.l, b.location.x, b.l) * overlap(a.location.z, a.w, b.location.z, b.w);
    inter / (a.l * a.w + b.l * b.w - inter)
}

pub fn axis_aligned_3d_iou(a: &Box3D, b: &Box3D) -> f64 {
    let vertical = overlap(a.location.y - a.h / 2.0, a.h, b.location.y - b.h / 2.0, b.h);
    let inter =
        overlap(a.location.x, a.l, b.location.x, b.l) * overlap(a.location.z, a.w, b.location.z, b.w) * vertical;
    inter / (a.l * a.w * a.h + b.l * b.w * b.h - inter)
}

fn overlap(c1: f64, len1: f64, c2: f64, len2: f64) -> f64 {
    ((c1 + len1 / 2.0).min(c2 + len2 / 2.0) - (c1 - len1 / 2.0).max(c2 - len2 / 2.0)).max(0.0)
}

// --------------------------------------------------------------- detection

/// KITTI buckets, easiest first: (min height px, max occlusion, max truncation).
const BUCKETS: [(f64, i32, f64); 3] = [(40.0, 0, 0.15), (25.0, 1, 0.30), (25.0, 2, 0.50)];

/// Index of the easiest bucket the object meets, if any.
pub fn oracle_bucket(o: &ObjectLabel) -> Option<usize> {
    let height = o.bbox2d[3] - o.bbox2d[1];
    BUCKETS
        .iter()
        .position(|&(h, occ, tr)| height >= h && o.occlusion <= occ && o.truncation <= tr)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Tp,
    Fp,
    Skip,
}

/// Enumerate every injective partial assignment of detections (in
/// descending score order, ties by input order) to ground-truth objects with
/// IoU at or above `threshold`, and keep the one that is lexicographically
/// best when each detection prefers a higher IoU, then a lower index, over
/// being unassigned.
pub fn exhaustive_match(
    dets: &[Detection],
    gts: &[ObjectLabel],
    class_name: &str,
    bucket: usize,
    iou: &dyn Fn(&Box3D, &Box3D) -> f64,
    threshold: f64,
) -> (Vec<(f64, Flag)>, usize) {
    let gt: Vec<(Box3D, Option<usize>)> = gts
        .iter()
        .filter(|g| g.class_name == class_name)
        .map(|g| (g.box3d().unwrap(), oracle_bucket(g)))
        .collect();
    let mut order: Vec<usize> = (0..dets.len()).filter(|&i| dets[i].class_name == class_name).collect();
    // stable insertion sort by descending score
    for i in 1..order.len() {
        let mut j = i;
        while j > 0 && dets[order[j - 1]].score < dets[order[j]].score {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let ious: Vec<Vec<f64>> = order
        .iter()
        .map(|&d| gt.iter().map(|g| iou(&dets[d].box3d, &g.0)).collect())
        .collect();

    let mut best: Option<Vec<Option<usize>>> = None;
    let mut current = Vec::with_capacity(order.len());
    let mut used = vec![false; gt.len()];
    enumerate(0, &ious, threshold, &mut used, &mut current, &mut best);
    let assignment = best.unwrap_or_default();

    let counted = |b: Option<usize>| b.is_some_and(|b| b <= bucket);
    let flags = order
        .iter()
        .zip(&assignment)
        .map(|(&d, a)| {
            let flag = match a {
                None => Flag::Fp,
                Some(j) if counted(gt[*j].1) => Flag::Tp,
                Some(_) => Flag::Skip,
            };
            (dets[d].score, flag)
        })
        .collect();
    (flags, gt.iter().filter(|g| counted(g.1)).count())
}

fn enumerate(
    k: usize,
    ious: &[Vec<f64>],
    threshold: f64,
    used: &mut [bool],
    current: &mut Vec<Option<usize>>,
    best: &mut Option<Vec<Option<usize>>>,
) {
    if k == ious.len() {
        if best.as_ref().is_none_or(|b| better(current, b, ious)) {
            *best = Some(current.clone());
        }
        return;
    }
    current.push(None);
    enumerate(k + 1, ious, threshold, used, current, best);
    current.pop();
    for j in 0..used.len() {
        if !used[j] && ious[k][j] >= threshold {
            used[j] = true;
            current.push(Some(j));
            enumerate(k + 1, ious, threshold, used, current, best);
            current.pop();
            used[j] = false;
        }
    }
}

fn better(a: &[Option<usize>], b: &[Option<usize>], ious: &[Vec<f64>]) -> bool {
    for (k, (x, y)) in a.iter().zip(b).enumerate() {
        let key = |c: &Option<usize>| c.map(|j| (ious[k][j], std::cmp::Reverse(j)));
        match key(x).partial_cmp(&key(y)).unwrap() {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// AP from every prefix of the score-ranked list: at each recall sample,
/// take the best precision among prefixes reaching that recall.
pub fn brute_force_ap(flags: &[(f64, Flag)], counted: usize, mode: ApMode) -> Option<f64> {
    if counted == 0 {
        return None;
    }
    let mut ranked: Vec<(f64, Flag)> = flags.iter().copied().filter(|f| f.1 != Flag::Skip).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    let prefixes: Vec<(usize, f64)> = (1..=ranked.len())
        .map(|len| {
            let tp = ranked[..len].iter().filter(|f| f.1 == Flag::Tp).count();
            (tp, tp as f64 / len as f64)
        })
        .collect();
    let samples: Vec<(usize, usize)> = match mode {
        ApMode::R11 => (0..=10).map(|i| (i, 10)).collect(),
        ApMode::R40 => (1..=40).map(|i| (i, 40)).collect(),
    };
    let mut total = 0.0;
    for &(num, den) in &samples {
        let p = prefixes
            .iter()
            .filter(|(tp, _)| tp * den >= num * counted)
            .map(|p| p.1)
            .fold(0.0, f64::max);
        total += p;
    }
    Some(100.0 * total / samples.len() as f64)
}

/// Random yaw-0 car with a random 2D height, occlusion and truncation.
pub fn random_object(rng: &mut ChaCha8Rng, class_name: &str) -> ObjectLabel {
    let heights = [10.0, 30.0, 50.0, 80.0];
    let top = 100.0;
    ObjectLabel {
        class_name: class_name.into(),
        truncation: [0.0, 0.2, 0.4, 0.8][rng.gen_range(0..4)],
        occlusion: rng.gen_range(0..4),
        alpha: 0.0,
        bbox2d: [100.0, top, 200.0, top + heights[rng.gen_range(0..4)]],
        h: [1.4, 1.5, 1.6][rng.gen_range(0..3)],
        w: 1.6,
        l: 4.0,
        location: Point3::new(
            rng.gen_range(0..4) as f64 * 1.5,
            [1.6, 1.7, 1.9][rng.gen_range(0..3)],
            10.0 + rng.gen_range(0..3) as f64 * 0.8,
        ),
        rotation_y: 0.0,
        score: None,
    }
}

/// Detection near one of the ground-truth objects (or anywhere), with a
/// score drawn from a small set so that ties occur.
pub fn random_detection(rng: &mut ChaCha8Rng, gts: &[ObjectLabel]) -> Detection {
    let jitter = [0.0, 0.3, 0.6, 1.2, 2.0];
    let (x, y, z) = match gts.choose_any(rng) {
        Some(g) if rng.gen_bool(0.8) => (
            g.location.x + jitter[rng.gen_range(0..5)],
            g.location.y,
            g.location.z + jitter[rng.gen_range(0..3)],
        ),
        _ => (rng.gen_range(-2.0..6.0), 1.7, rng.gen_range(9.0..13.0)),
    };
    let class_name = if rng.gen_bool(0.9) { "Car" } else { "Van" };
    let b = Box3D::new(Point3::new(x, y, z), 1.5, 1.6, 4.0, 0.0).unwrap();
    Detection::new(class_name, b, [0.3, 0.5, 0.5, 0.7, 0.9][rng.gen_range(0..5)])
}

trait ChooseAny<T> {
    fn choose_any(&self, rng: &mut ChaCha8Rng) -> Option<&T>;
}

impl<T> ChooseAny<T> for [T] {
    fn choose_any(&self, rng: &mut ChaCha8Rng) -> Option<&T> {
        (!self.is_empty()).then(|| &self[rng.gen_range(0..self.len())])
    }
}

// ------------------------------------------------------------------- depth

/// Pooled metrics from one pass over the flattened pixels of all frames:
/// (abs_rel, sq_rel, rms, rms_log, [δ1, δ2, δ3], n).
pub fn flat_depth_metrics(preds: &[DepthMap], gts: &[DepthMap], cap: f64) -> (f64, f64, f64, f64, [f64; 3], u64) {
    let pred: Vec<f64> = preds
        .iter()
        .flat_map(|d| d.values().iter().zip(d.valid_mask()).map(|(&v, &ok)| if ok { v } else { 0.0 }))
        .collect();
    let gt: Vec<f64> = gts
        .iter()
        .flat_map(|d| d.values().iter().zip(d.valid_mask()).map(|(&v, &ok)| if ok { v } else { 0.0 }))
        .collect();
    let (mut abs_rel, mut sq_rel, mut sq, mut sq_log) = (0.0, 0.0, 0.0, 0.0);
    let mut inl = [0u64; 3];
    let mut n = 0u64;
    for (&g, &p) in gt.iter().zip(&pred) {
        if !(g > 0.0 && g <= cap) {
            continue;
        }
        let p = p.max(1e-3).min(cap);
        n += 1;
        abs_rel += (g - p).abs() / g;
        sq_rel += (g - p).powi(2) / g;
        sq += (g - p).powi(2);
        sq_log += (g.ln() - p.ln()).powi(2);
        let r = if p > g { p / g } else { g / p };
        for (k, tau) in [1.25f64, 1.5625, 1.953125].iter().enumerate() {
            if r < *tau {
                inl[k] += 1;
            }
        }
    }
    let nf = n as f64;
    (
        abs_rel / nf,
        sq_rel / nf,
        (sq / nf).sqrt(),
        (sq_log / nf).sqrt(),
        inl.map(|c| c as f64 / nf),
        n,
    )
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

// ----------------------------------------------------------------- ranking

/// Pairs of items ordered differently by the two sequences.
pub fn brute_inversions(a: &[String], b: &[String]) -> u64 {
    let pos = |s: &[String], m: &String| s.iter().position(|x| x == m).unwrap();
    let mut count = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if pos(b, &a[i]) > pos(b, &a[j]) {
                count += 1;
            }
        }
    }
    count
}
