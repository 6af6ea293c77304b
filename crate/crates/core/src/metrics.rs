//! Per-player shot-quality statistics: command from landing dispersion,
//! launch-consistency z-scores and their 0-100 consistency/touch scores,
//! percentile ranks, Pearson correlation, and split-half validity.
//!
//! All landing deviations are inches; launch spreads are taken in MPH and
//! degrees (z-scores are scale-free, so the at-rest units are the convenient
//! choice). League aggregations use population standard deviations
//! throughout, and every map is ordered by player name so downstream output
//! is deterministic.

use std::collections::BTreeMap;
use std::io::{self, Write};

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::data::ShotRecord;
use crate::physics::CourtGeometry;

/// Below this spread a league is treated as degenerate: no ranking
/// information exists, so z-scores collapse to 0 and scores to 100.
const DEGENERATE_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("empty input")]
    EmptyInput,
    #[error("need at least {needed} players, got {got}")]
    InsufficientPlayers { needed: usize, got: usize },
    #[error("player sets do not match: {0}")]
    MismatchedPlayers(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),
}

/// Where one shot landed in the rim plane, relative to the bullseye.
/// Depth is positive when the ball lands short (toward the shooter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandingPoint {
    pub depth_dev_in: f64,
    pub lateral_dev_in: f64,
}

/// Euclidean landing distance from the bullseye, inches.
pub fn landing_deviation(p: &LandingPoint) -> f64 {
    p.depth_dev_in.hypot(p.lateral_dev_in)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerAccuracy {
    /// Mean landing distance from the bullseye, inches.
    pub mu_in: f64,
    /// Population SD of those distances, inches.
    pub sigma_in: f64,
    pub n: usize,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn population_sd(xs: &[f64], m: f64) -> f64 {
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
}

pub fn accuracy_stats(shots: &[LandingPoint]) -> Result<PlayerAccuracy, MetricsError> {
    if shots.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let deviations: Vec<f64> = shots.iter().map(landing_deviation).collect();
    let mu = mean(&deviations);
    Ok(PlayerAccuracy { mu_in: mu, sigma_in: population_sd(&deviations, mu), n: shots.len() })
}

/// Command C = 1 / (1 + sqrt(mu^2 + sigma^2)), with mu and sigma in inches.
/// 1.0 means every shot on the bullseye; large miss distances push C toward
/// zero.
pub fn command(acc: &PlayerAccuracy) -> f64 {
    1.0 / (1.0 + acc.mu_in.hypot(acc.sigma_in))
}

/// League z-scores of a per-player inconsistency (an SD of some launch
/// quantity). A league with identical SDs carries no ranking information and
/// maps everyone to z = 0.
pub fn inconsistency_zscores(
    per_player_sd: &BTreeMap<String, f64>,
) -> Result<BTreeMap<String, f64>, MetricsError> {
    if per_player_sd.len() < 2 {
        return Err(MetricsError::InsufficientPlayers { needed: 2, got: per_player_sd.len() });
    }
    let sds: Vec<f64> = per_player_sd.values().copied().collect();
    let m = mean(&sds);
    let sd = population_sd(&sds, m);
    Ok(per_player_sd
        .iter()
        .map(|(p, &v)| (p.clone(), if sd < DEGENERATE_EPS { 0.0 } else { (v - m) / sd }))
        .collect())
}

fn minmax_score(values: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let lo = values.values().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.values().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    values
        .iter()
        .map(|(p, &v)| {
            (p.clone(), if range < DEGENERATE_EPS { 100.0 } else { 100.0 * (hi - v) / range })
        })
        .collect()
}

/// Consistency r = 100 - 100 * minmax(z): the league's most consistent
/// player scores 100, the least consistent 0.
pub fn consistency(z: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>, MetricsError> {
    if z.len() < 2 {
        return Err(MetricsError::InsufficientPlayers { needed: 2, got: z.len() });
    }
    Ok(minmax_score(z))
}

/// Touch R = 100 - 100 * minmax(z_theta + z_v). Launch-position spread is
/// deliberately excluded; it barely influences where the ball lands.
pub fn touch(
    z_theta: &BTreeMap<String, f64>,
    z_v: &BTreeMap<String, f64>,
) -> Result<BTreeMap<String, f64>, MetricsError> {
    if !z_theta.keys().eq(z_v.keys()) {
        return Err(MetricsError::MismatchedPlayers(
            "angle and velocity z-score maps cover different players".into(),
        ));
    }
    if z_theta.len() < 2 {
        return Err(MetricsError::InsufficientPlayers { needed: 2, got: z_theta.len() });
    }
    let sums: BTreeMap<String, f64> =
        z_theta.iter().map(|(p, &zt)| (p.clone(), zt + z_v[p])).collect();
    Ok(minmax_score(&sums))
}

/// Ascending percentile ranks: ties share their average rank, percentile =
/// round(100 * rank / N) clamped to [1, 100], so the best value always maps
/// to 100 and the worst never drops below 1.
pub fn percentile_rank(values: &BTreeMap<String, f64>) -> BTreeMap<String, u32> {
    let n = values.len();
    if n == 0 {
        return BTreeMap::new();
    }
    let mut sorted: Vec<(&String, f64)> = values.iter().map(|(p, &v)| (p, v)).collect();
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && sorted[j + 1].1 == sorted[i].1 {
            j += 1;
        }
        // 1-based ranks i+1 ..= j+1 share their average.
        let avg_rank = (i + j + 2) as f64 / 2.0;
        let pct = (100.0 * avg_rank / n as f64).round().clamp(1.0, 100.0) as u32;
        for &(p, _) in &sorted[i..=j] {
            out.insert(p.clone(), pct);
        }
        i = j + 1;
    }
    out
}

/// Sample Pearson correlation, clamped into [-1, 1] against float rounding.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64, MetricsError> {
    if x.len() != y.len() {
        return Err(MetricsError::LengthMismatch(format!("{} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(MetricsError::LengthMismatch(format!("need at least 2 pairs, got {}", x.len())));
    }
    let mx = mean(x);
    let my = mean(y);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxy += (xi - mx) * (yi - my);
        sxx += (xi - mx) * (xi - mx);
        syy += (yi - my) * (yi - my);
    }
    if sxx == 0.0 {
        return Err(MetricsError::ZeroVariance("x"));
    }
    if syy == 0.0 {
        return Err(MetricsError::ZeroVariance("y"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub r_ftpct: f64,
    pub r_command: f64,
    pub n_players: usize,
}

/// Splits each player's season at `split_date` (early strictly before, late
/// on or after) and correlates early vs late FT% and command across players
/// with at least `min_attempts` shots on each side.
pub fn split_half_validity(
    shots: &[ShotRecord],
    split_date: NaiveDate,
    min_attempts: usize,
) -> Result<ValidityReport, MetricsError> {
    let mut halves: BTreeMap<&str, (Vec<&ShotRecord>, Vec<&ShotRecord>)> = BTreeMap::new();
    for s in shots {
        let entry = halves.entry(s.player.as_str()).or_default();
        if s.date < split_date {
            entry.0.push(s);
        } else {
            entry.1.push(s);
        }
    }
    let mut early_ft = Vec::new();
    let mut late_ft = Vec::new();
    let mut early_cmd = Vec::new();
    let mut late_cmd = Vec::new();
    for (early, late) in halves.values() {
        if early.len() < min_attempts.max(1) || late.len() < min_attempts.max(1) {
            continue;
        }
        let ft = |half: &[&ShotRecord]| {
            half.iter().filter(|s| s.made).count() as f64 / half.len() as f64
        };
        let cmd = |half: &[&ShotRecord]| {
            let landings: Vec<LandingPoint> = half.iter().map(|s| s.landing).collect();
            Ok::<f64, MetricsError>(command(&accuracy_stats(&landings)?))
        };
        early_ft.push(ft(early));
        late_ft.push(ft(late));
        early_cmd.push(cmd(early)?);
        late_cmd.push(cmd(late)?);
    }
    if early_ft.len() < 2 {
        return Err(MetricsError::InsufficientPlayers { needed: 2, got: early_ft.len() });
    }
    Ok(ValidityReport {
        r_ftpct: pearson_r(&early_ft, &late_ft)?,
        r_command: pearson_r(&early_cmd, &late_cmd)?,
        n_players: early_ft.len(),
    })
}

/// Full per-player report row.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerMetrics {
    pub player: String,
    pub n: usize,
    pub mu_in: f64,
    pub sigma_in: f64,
    pub command: f64,
    pub z_v: f64,
    pub z_theta: f64,
    pub z_pos: f64,
    pub r_v: f64,
    pub r_theta: f64,
    pub r_pos: f64,
    pub touch: f64,
    pub ft_pct: f64,
    pub command_pct: u32,
    pub r_v_pct: u32,
    pub r_theta_pct: u32,
    pub r_pos_pct: u32,
    pub touch_pct: u32,
    pub ft_pct_pct: u32,
}

/// Builds the league report for an already filtered, already eligible shot
/// set: per-player accuracy and command, launch-inconsistency z-scores over
/// the league, consistency and touch scores, FT%, and percentiles of each.
///
/// A single-player league has no peers to normalize against; it is treated
/// as fully degenerate (z = 0, scores and percentiles 100) rather than an
/// error so a one-player file still produces a report. Rows come back
/// sorted by ascending command.
pub fn league_metrics(
    shots: &[ShotRecord],
    geom: &CourtGeometry,
) -> Result<Vec<PlayerMetrics>, MetricsError> {
    let mut by_player: BTreeMap<&str, Vec<&ShotRecord>> = BTreeMap::new();
    for s in shots {
        by_player.entry(s.player.as_str()).or_default().push(s);
    }
    if by_player.is_empty() {
        return Ok(Vec::new());
    }

    struct Base {
        acc: PlayerAccuracy,
        command: f64,
        ft_pct: f64,
        sd_v: f64,
        sd_theta: f64,
        sd_pos: f64,
    }
    let mut base: BTreeMap<String, Base> = BTreeMap::new();
    for (player, list) in &by_player {
        let landings: Vec<LandingPoint> = list.iter().map(|s| s.landing).collect();
        let acc = accuracy_stats(&landings)?;
        let vs: Vec<f64> = list.iter().map(|s| s.launch.v0_mph()).collect();
        let thetas: Vec<f64> = list.iter().map(|s| s.launch.theta0_deg()).collect();
        // Release-point spread, measured as distance from the rim center.
        let pos: Vec<f64> = list
            .iter()
            .map(|s| {
                (s.launch.x0_ft - geom.rim_center_x_ft).hypot(s.launch.z0_ft - geom.rim_height_ft)
            })
            .collect();
        let made = list.iter().filter(|s| s.made).count();
        base.insert(
            player.to_string(),
            Base {
                acc,
                command: command(&acc),
                ft_pct: made as f64 / list.len() as f64,
                sd_v: population_sd(&vs, mean(&vs)),
                sd_theta: population_sd(&thetas, mean(&thetas)),
                sd_pos: population_sd(&pos, mean(&pos)),
            },
        );
    }

    let single = base.len() == 1;
    let collect = |f: fn(&Base) -> f64| -> BTreeMap<String, f64> {
        base.iter().map(|(p, b)| (p.clone(), f(b))).collect()
    };
    let (z_v, z_theta, z_pos, r_v, r_theta, r_pos, touch_scores);
    if single {
        let all = |v: f64| -> BTreeMap<String, f64> {
            base.keys().map(|p| (p.clone(), v)).collect()
        };
        z_v = all(0.0);
        z_theta = all(0.0);
        z_pos = all(0.0);
        r_v = all(100.0);
        r_theta = all(100.0);
        r_pos = all(100.0);
        touch_scores = all(100.0);
    } else {
        z_v = inconsistency_zscores(&collect(|b| b.sd_v))?;
        z_theta = inconsistency_zscores(&collect(|b| b.sd_theta))?;
        z_pos = inconsistency_zscores(&collect(|b| b.sd_pos))?;
        r_v = consistency(&z_v)?;
        r_theta = consistency(&z_theta)?;
        r_pos = consistency(&z_pos)?;
        touch_scores = touch(&z_theta, &z_v)?;
    }

    let pct = |values: &BTreeMap<String, f64>| percentile_rank(values);
    let command_pct = pct(&collect(|b| b.command));
    let ft_pct_pct = pct(&collect(|b| b.ft_pct));
    let r_v_pct = pct(&r_v);
    let r_theta_pct = pct(&r_theta);
    let r_pos_pct = pct(&r_pos);
    let touch_pct = pct(&touch_scores);

    let mut rows: Vec<PlayerMetrics> = base
        .iter()
        .map(|(p, b)| PlayerMetrics {
            player: p.clone(),
            n: b.acc.n,
            mu_in: b.acc.mu_in,
            sigma_in: b.acc.sigma_in,
            command: b.command,
            z_v: z_v[p],
            z_theta: z_theta[p],
            z_pos: z_pos[p],
            r_v: r_v[p],
            r_theta: r_theta[p],
            r_pos: r_pos[p],
            touch: touch_scores[p],
            ft_pct: b.ft_pct,
            command_pct: command_pct[p],
            r_v_pct: r_v_pct[p],
            r_theta_pct: r_theta_pct[p],
            r_pos_pct: r_pos_pct[p],
            touch_pct: touch_pct[p],
            ft_pct_pct: ft_pct_pct[p],
        })
        .collect();
    rows.sort_by(|a, b| a.command.total_cmp(&b.command).then_with(|| a.player.cmp(&b.player)));
    Ok(rows)
}

pub const METRICS_CSV_HEADER: &str = "player,n,mu_in,sigma_in,command,z_v,z_theta,z_pos,\
r_v,r_theta,r_pos,touch,ft_pct,command_pct,r_v_pct,r_theta_pct,r_pos_pct,touch_pct,ft_pct_pct";

pub fn write_metrics_csv<W: Write>(rows: &[PlayerMetrics], mut w: W) -> io::Result<()> {
    writeln!(w, "{METRICS_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{},{},{},{}",
            r.player,
            r.n,
            r.mu_in,
            r.sigma_in,
            r.command,
            r.z_v,
            r.z_theta,
            r.z_pos,
            r.r_v,
            r.r_theta,
            r.r_pos,
            r.touch,
            r.ft_pct,
            r.command_pct,
            r.r_v_pct,
            r.r_theta_pct,
            r.r_pos_pct,
            r.touch_pct,
            r.ft_pct_pct
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(p, v)| (p.to_string(), *v)).collect()
    }

    fn depth(d: f64) -> LandingPoint {
        LandingPoint { depth_dev_in: d, lateral_dev_in: 0.0 }
    }

    #[test]
    fn landing_deviation_cases() {
        assert_eq!(landing_deviation(&LandingPoint { depth_dev_in: 0.0, lateral_dev_in: 0.0 }), 0.0);
        assert_eq!(landing_deviation(&LandingPoint { depth_dev_in: 3.0, lateral_dev_in: 4.0 }), 5.0);
        assert_eq!(landing_deviation(&depth(-2.0)), 2.0);
    }

    #[test]
    fn accuracy_stats_cases() {
        assert_eq!(accuracy_stats(&[]), Err(MetricsError::EmptyInput));
        let acc = accuracy_stats(&[depth(0.0), depth(0.0)]).unwrap();
        assert_eq!((acc.mu_in, acc.sigma_in), (0.0, 0.0));
        let acc = accuracy_stats(&[depth(3.0), depth(5.0)]).unwrap();
        assert_eq!((acc.mu_in, acc.sigma_in, acc.n), (4.0, 1.0, 2));
    }

    #[test]
    fn accuracy_stats_rayleigh_mean() {
        // Isotropic 2D normal noise of scale s has mean radius s sqrt(pi/2).
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = 4.0;
        let normal = Normal::new(0.0, s).unwrap();
        let shots: Vec<LandingPoint> = (0..1000)
            .map(|_| LandingPoint {
                depth_dev_in: normal.sample(&mut rng),
                lateral_dev_in: normal.sample(&mut rng),
            })
            .collect();
        let acc = accuracy_stats(&shots).unwrap();
        let expected = s * (std::f64::consts::PI / 2.0).sqrt();
        assert!((acc.mu_in - expected).abs() / expected < 0.05, "mu {}", acc.mu_in);
    }

    #[test]
    fn command_cases() {
        let c = |mu, sigma| command(&PlayerAccuracy { mu_in: mu, sigma_in: sigma, n: 1 });
        assert_eq!(c(0.0, 0.0), 1.0);
        assert_eq!(c(3.0, 4.0), 1.0 / 6.0);
        assert!(c(1.0, 1.0) > c(2.0, 1.0));
        assert!(c(1.0, 1.0) > c(1.0, 2.0));
    }

    #[test]
    fn zscores_two_and_degenerate() {
        let z = inconsistency_zscores(&map(&[("a", 1.0), ("b", 3.0)])).unwrap();
        assert_eq!(z["a"], -1.0);
        assert_eq!(z["b"], 1.0);
        let z = inconsistency_zscores(&map(&[("a", 2.0), ("b", 2.0), ("c", 2.0)])).unwrap();
        assert!(z.values().all(|&v| v == 0.0));
        assert!(matches!(
            inconsistency_zscores(&map(&[("a", 1.0)])),
            Err(MetricsError::InsufficientPlayers { .. })
        ));
    }

    #[test]
    fn zscores_three_players() {
        let z = inconsistency_zscores(&map(&[("a", 1.0), ("b", 2.0), ("c", 6.0)])).unwrap();
        assert!((z["a"] - -0.9258200997725514).abs() < 1e-12);
        assert!((z["b"] - -0.4629100498862757).abs() < 1e-12);
        assert!((z["c"] - 1.3887301496588271).abs() < 1e-12);
        let vals: Vec<f64> = z.values().copied().collect();
        let m = mean(&vals);
        assert!(m.abs() < 1e-12);
        assert!((population_sd(&vals, m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn consistency_cases() {
        let r = consistency(&map(&[("a", -1.0), ("b", 1.0)])).unwrap();
        assert_eq!(r["a"], 100.0);
        assert_eq!(r["b"], 0.0);
        let r = consistency(&map(&[("a", 0.5), ("b", 0.5)])).unwrap();
        assert!(r.values().all(|&v| v == 100.0));
        let z = map(&[("a", -0.9258200997725514), ("b", -0.4629100498862757), ("c", 1.3887301496588271)]);
        let r = consistency(&z).unwrap();
        assert_eq!(r["a"], 100.0);
        assert!((r["b"] - 80.0).abs() < 1e-9);
        assert_eq!(r["c"], 0.0);
    }

    #[test]
    fn touch_cases() {
        let r = touch(&map(&[("a", -1.0), ("b", 1.0)]), &map(&[("a", -1.0), ("b", 1.0)])).unwrap();
        assert_eq!(r["a"], 100.0);
        assert_eq!(r["b"], 0.0);
        let r = touch(
            &map(&[("a", -0.7), ("b", 0.0), ("c", 0.7)]),
            &map(&[("a", -0.7), ("b", 0.0), ("c", 0.7)]),
        )
        .unwrap();
        assert_eq!(r["a"], 100.0);
        assert!((r["b"] - 50.0).abs() < 1e-9);
        assert_eq!(r["c"], 0.0);
        assert!(matches!(
            touch(&map(&[("a", 0.0), ("b", 0.0)]), &map(&[("a", 0.0), ("x", 0.0)])),
            Err(MetricsError::MismatchedPlayers(_))
        ));
    }

    #[test]
    fn percentile_cases() {
        let p = percentile_rank(&map(&[("solo", 42.0)]));
        assert_eq!(p["solo"], 100);
        let p = percentile_rank(&map(&[("a", 10.0), ("b", 20.0), ("c", 30.0), ("d", 40.0)]));
        assert_eq!((p["a"], p["b"], p["c"], p["d"]), (25, 50, 75, 100));
        let many: BTreeMap<String, f64> =
            (0..72).map(|i| (format!("p{i:02}"), i as f64)).collect();
        let p = percentile_rank(&many);
        assert_eq!(p["p00"], 1);
        assert_eq!(p["p71"], 100);
        // Two tied in the middle of three share the average rank.
        let p = percentile_rank(&map(&[("a", 1.0), ("b", 2.0), ("c", 2.0), ("d", 3.0)]));
        assert_eq!(p["b"], p["c"]);
        assert_eq!(p["b"], 63);
    }

    #[test]
    fn pearson_cases() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((pearson_r(&x, &y).unwrap() - 1.0).abs() < 1e-12);
        let y: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_r(&x, &y).unwrap() + 1.0).abs() < 1e-12);
        let r = pearson_r(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
        assert!(matches!(
            pearson_r(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(MetricsError::LengthMismatch(_))
        ));
        assert!(matches!(
            pearson_r(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(MetricsError::ZeroVariance("x"))
        ));
    }

    fn record(player: &str, date: &str, depth_in: f64, made: bool) -> ShotRecord {
        use crate::physics::{LaunchConditions, Outcome};
        ShotRecord {
            player: player.to_string(),
            date: date.parse().unwrap(),
            launch: LaunchConditions::from_mph_deg(18.4, 9.6, 14.4, 46.0),
            landing: LandingPoint { depth_dev_in: depth_in, lateral_dev_in: 0.0 },
            made,
            outcome: if made { Outcome::Swish } else { Outcome::Miss },
        }
    }

    #[test]
    fn split_half_insufficient_players() {
        let shots = vec![record("a", "2024-11-01", 1.0, true)];
        let err = split_half_validity(&shots, "2024-11-15".parse().unwrap(), 1);
        assert!(matches!(err, Err(MetricsError::InsufficientPlayers { .. })));
    }

    #[test]
    fn split_half_duplicated_halves_correlate_perfectly() {
        let mut shots = Vec::new();
        for (p, d, made) in [("a", 1.0, true), ("a", 3.0, false), ("b", 5.0, true), ("b", 9.0, false), ("c", 2.0, true), ("c", 2.5, true)] {
            shots.push(record(p, "2024-11-01", d, made));
            shots.push(record(p, "2024-12-01", d, made));
        }
        let report = split_half_validity(&shots, "2024-11-15".parse().unwrap(), 2).unwrap();
        assert_eq!(report.n_players, 3);
        assert!((report.r_ftpct - 1.0).abs() < 1e-12);
        assert!((report.r_command - 1.0).abs() < 1e-12);
    }

    #[test]
    fn league_metrics_single_player_degenerates_to_100() {
        let shots: Vec<ShotRecord> =
            (0..5).map(|_| record("solo", "2024-11-01", 0.0, true)).collect();
        let rows = league_metrics(&shots, &CourtGeometry::default()).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.command, 1.0);
        assert_eq!(r.touch, 100.0);
        assert_eq!((r.r_v, r.r_theta, r.r_pos), (100.0, 100.0, 100.0));
        assert_eq!(r.command_pct, 100);
        assert_eq!(r.ft_pct, 1.0);
    }

    #[test]
    fn league_metrics_sorted_by_command() {
        let mut shots = Vec::new();
        for i in 0..4 {
            // Spread grows with i, so command falls with i.
            for k in 0..3 {
                shots.push(record("p0", "2024-11-01", k as f64 * 0.1, true));
                shots.push(record(&format!("p{i}"), "2024-11-01", (i * k) as f64, true));
            }
        }
        let rows = league_metrics(&shots, &CourtGeometry::default()).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[0].command <= pair[1].command);
        }
    }
}
