//! The worked figure positions, as checks returning a one-line summary.

use rzs_core::solver::{check_cr_conditions, must_play_trace, verify_replay, ReplayOptions, RzstNode};
use rzs_core::*;
use std::result::Result;

use super::*;

fn trace_line(steps: &[rzs_core::solver::TraceStep]) -> String {
    steps
        .iter()
        .map(|s| {
            let rest: Vec<String> = s.remaining.iter().map(|m| m.to_string()).collect();
            format!("{}{} -> {{{}}}", s.mv, if s.null { " (null)" } else { "" }, rest.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Null move D1, then E2 and F2 exhaust the region; the root zone is the
/// union of the three leaf zones.
pub fn fig1() -> Result<String, String> {
    let (rules, p) = go("figures/fig1_pa.sgf");
    let (_, t) = won(&rules, &p, &config(None));
    let steps = must_play_trace(&rules, &p, &t);
    let want = vec![(m("D1", 7), true, vec![m("E2", 7), m("F2", 7)]), (m("E2", 7), false, vec![m("F2", 7)]), (m("F2", 7), false, vec![])];
    let got: Vec<(Move, bool, Vec<Move>)> = steps.iter().map(|s| (s.mv, s.null, s.remaining.clone())).collect();
    ensure(got == want, || format!("fig1 trace was {}", trace_line(&steps)))?;
    let mut leaves = Zone::empty(7);
    for f in ["figures/fig1_pb.sgf", "figures/fig1_pc.sgf", "figures/fig1_pd.sgf"] {
        let (r, q) = go(f);
        leaves = leaves.union(&leaf_zone(&r, &q)).unwrap();
    }
    ensure(t.rz == leaves, || {
        format!("fig1 root zone {:?} is not the union of leaf zones {:?}", names(&t.rz), names(&leaves))
    })?;
    Ok(format!("fig1 {} | rz {} grids", trace_line(&steps), t.rz.len()))
}

/// After the two null moves the region is empty.
pub fn fig4() -> Result<String, String> {
    let (rules, p) = go("figures/fig4.sgf");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig4.priors")));
    let steps = must_play_trace(&rules, &p, &t);
    let last = steps.last().ok_or("fig4 root has no children")?;
    ensure(last.null && last.remaining.is_empty(), || format!("fig4 trace {}", trace_line(&steps)))?;
    ensure(steps.iter().all(|s| s.null), || format!("fig4 expected only null moves: {}", trace_line(&steps)))?;
    Ok(format!("fig4 {}", trace_line(&steps)))
}

/// F1 captures; the dilated root zone is the undilated one plus the
/// captured block's missing grids.
pub fn fig5() -> Result<String, String> {
    let (rules, p) = go("figures/fig5_pa.sgf");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig5.priors")));
    ensure(t.winning_move() == Some(m("F1", 7)), || format!("fig5 winning move {:?}", t.winning_move()))?;
    let child = &t.children[0].node;
    let steps = must_play_trace(&rules, &rules.play(&p, m("F1", 7)).unwrap(), child);
    ensure(steps.first().is_some_and(|s| s.mv == m("G3", 7) && s.null), || {
        format!("fig5 after F1: {}", trace_line(&steps))
    })?;
    let mut z_u = child.rz;
    z_u.insert(g("F1", 7));
    let mut added: Vec<String> = t.rz.grids().filter(|&x| !z_u.contains(x)).map(|x| x.to_string()).collect();
    added.sort();
    ensure(added == ["G4", "G5", "G6"], || format!("fig5 dilation added {added:?}"))?;
    Ok(format!("fig5 F1 then {} | dilation adds {}", trace_line(&steps), added.join(",")))
}

/// The root tree with its zone swapped for the undilated one.
pub fn fig5_undilated() -> (GoRules, Position, RzstNode, Zone) {
    let (rules, p) = go("figures/fig5_pa.sgf");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig5.priors")));
    let mut z_u = t.children[0].node.rz;
    z_u.insert(g("F1", 7));
    let mut bare = (*t).clone();
    bare.rz = z_u;
    (rules, p, bare, z_u)
}

/// p_e differs from p_a only at G4, outside the undilated zone: replay of
/// the undilated tree must fail there, and the dilated zone tells them apart.
pub fn fig5_negative() -> Result<String, String> {
    let (rules, p, bare, _) = fig5_undilated();
    let (_, pe) = go("figures/fig5_pe.sgf");
    let opts = ReplayOptions::default();
    let undilated = verify_replay(&rules, &bare, &p, &pe, &opts);
    ensure(undilated == Ok(false), || format!("undilated replay on p_e gave {undilated:?}"))?;
    let (_, t) = won(&rules, &p, &config(Some("figures/fig5.priors")));
    let dilated = verify_replay(&rules, &t, &p, &pe, &opts);
    ensure(dilated == Err(RzsError::PatternMismatch), || format!("dilated zone accepted p_e: {dilated:?}"))?;
    Ok("fig5 p_e breaks the undilated tree and is excluded by the dilated zone".into())
}

/// Null move G4 empties the region; AND dilation adds exactly G4.
pub fn fig6() -> Result<String, String> {
    let (rules, p) = go("figures/fig6_pa.sgf");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig6.priors")));
    let steps = must_play_trace(&rules, &p, &t);
    ensure(steps.len() == 1 && steps[0].mv == m("G4", 7) && steps[0].null && steps[0].remaining.is_empty(), || {
        format!("fig6 trace {}", trace_line(&steps))
    })?;
    let z_b = child_union(&t);
    let added: Vec<String> = t.rz.grids().filter(|&x| !z_b.contains(x)).map(|x| x.to_string()).collect();
    ensure(added == ["G4"], || format!("fig6 dilation added {added:?}"))?;
    // without G4 the zone would admit p_d, where White's G4 move matters
    let (_, pd) = go("figures/fig6_pd.sgf");
    let mut bare = (*t).clone();
    bare.rz = z_b;
    let cr = check_cr_conditions(&rules, &p, &bare, &pd);
    ensure(cr == Ok(false), || format!("fig6 undilated CR check on p_d gave {cr:?}"))?;
    Ok(format!("fig6 {} | dilation adds {}", trace_line(&steps), added.join(",")))
}

/// Border dilation pulls in D4 and D5.
pub fn fig7() -> Result<String, String> {
    let (rules, p) = go("figures/fig7_pa.sgf");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig7.priors")));
    let steps = must_play_trace(&rules, &p, &t);
    ensure(steps.first().is_some_and(|s| s.mv == m("G7", 7) && s.null), || format!("fig7 trace {}", trace_line(&steps)))?;
    let z_b = child_union(&t);
    for d in ["D4", "D5"] {
        ensure(t.rz.contains(g(d, 7)) && !z_b.contains(g(d, 7)), || format!("fig7: {d} not added by dilation"))?;
    }
    let (_, pd) = go("figures/fig7_pd.sgf");
    let mut bare = (*t).clone();
    bare.rz = z_b;
    let cr = check_cr_conditions(&rules, &p, &bare, &pd);
    ensure(cr == Ok(false), || format!("fig7 undilated CR check on p_d gave {cr:?}"))?;
    Ok(format!("fig7 {} | dilation adds D4,D5", trace_line(&steps)))
}

/// Hex: null B2 leaves {B1,C1,C2}, null C2 leaves {B1}.
pub fn fig2() -> Result<String, String> {
    let (rules, p) = hex("figures/fig2_hex.txt");
    let (_, t) = won(&rules, &p, &config(Some("figures/fig2.priors")));
    let steps = must_play_trace(&rules, &p, &t);
    let got: Vec<(Move, bool, Vec<Move>)> = steps.iter().take(2).map(|s| (s.mv, s.null, s.remaining.clone())).collect();
    let want = vec![
        (m("B2", 4), true, vec![m("B1", 4), m("C1", 4), m("C2", 4)]),
        (m("C2", 4), true, vec![m("B1", 4)]),
    ];
    ensure(got == want, || format!("fig2 trace {}", trace_line(&steps)))?;
    Ok(format!("fig2 {}", trace_line(&steps)))
}
