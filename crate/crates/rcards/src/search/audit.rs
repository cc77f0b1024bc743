//! Necessary-condition audit.
//!
//! For a strategy claimed to be equitable, informative and perfectly
//! `(d-1)`-secure with `d = a - c`, a chain of structural consequences must
//! hold; the audit re-verifies the claims and then asserts every
//! consequence, reporting each violation instead of erroring out. On a
//! correct implementation and a genuinely secure strategy the report is
//! empty — any violation would falsify one of the underlying theorems.

use std::fmt;

use crate::design::{block_neighborhood, design_lambda, Design};
use crate::strategy::Strategy;
use crate::subsets::k_subsets;
use crate::verify::{
    equitability, is_informative, perfect_security_check_with_budget, possible_hands,
    weak_security_check_with_budget,
};
use crate::Budget;

/// What a single audit entry checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditCheck {
    /// `a > c + 1`; below that, informativeness and weak 1-security cannot
    /// coexist, so the claim is rejected outright.
    ParameterRange,
    /// Claim re-verification: the strategy is equitable.
    ClaimEquitable,
    /// Claim re-verification: informative for Bob.
    ClaimInformative,
    /// Claim re-verification: perfectly δ-secure.
    ClaimPerfectSecurity,
    /// Gate `b >= d-1`; consequences are only asserted above it.
    BobLargeEnough,
    /// Consequence: `a = d+1` (equivalently `c = 1`).
    AliceIsDPlusOne,
    /// Consequence: every announcement is a d-(n, d+1, 1) design.
    AnnouncementsAreDesigns,
    /// Consequence: `P(Y, i)` is nonempty for every hand `H_A` of every
    /// announcement and every c-subset `Y` of `H_A`.
    SubhandsArePossible,
    /// Consequence: every (d-1)-subset is contained in at least two hands
    /// and avoided by at least two hands of every announcement.
    TwoInTwoOut,
    /// Consequence: `N(D) ∖ D' = N(D') ∖ D` for all distinct (d-1)-subsets
    /// `D`, `D'`, per announcement.
    NeighborhoodEquality,
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditCheck::ParameterRange => "parameter range a > c+1",
            AuditCheck::ClaimEquitable => "claim: equitable",
            AuditCheck::ClaimInformative => "claim: informative for Bob",
            AuditCheck::ClaimPerfectSecurity => "claim: perfect security",
            AuditCheck::BobLargeEnough => "gate: b >= d-1",
            AuditCheck::AliceIsDPlusOne => "consequence: a = d+1",
            AuditCheck::AnnouncementsAreDesigns => {
                "consequence: announcements are d-(n,d+1,1) designs"
            }
            AuditCheck::SubhandsArePossible => {
                "consequence: P(Y,i) nonempty for c-subsets of hands"
            }
            AuditCheck::TwoInTwoOut => {
                "consequence: every (d-1)-subset in >=2 and out of >=2 hands"
            }
            AuditCheck::NeighborhoodEquality => "consequence: neighborhood equality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Violation(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub check: AuditCheck,
    pub status: AuditStatus,
}

impl AuditEntry {
    pub fn is_violation(&self) -> bool {
        matches!(self.status, AuditStatus::Violation(_))
    }
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    /// `d = a - c` (zero when `a <= c`).
    pub d: u32,
    /// The claimed security level that was re-verified.
    pub delta: u32,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().filter(|e| e.is_violation()).count()
    }

    pub fn passes(&self) -> bool {
        self.violations() == 0
    }
}

/// Counts failing instances of one consequence check, keeping the first.
struct Tally {
    count: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            count: 0,
            first: None,
        }
    }

    fn hit(&mut self, detail: impl FnOnce() -> String) {
        if self.first.is_none() {
            self.first = Some(detail());
        }
        self.count += 1;
    }

    fn entry(self, check: AuditCheck) -> AuditEntry {
        let status = match self.first {
            None => AuditStatus::Pass,
            Some(first) => {
                AuditStatus::Violation(format!("{} instance(s); first: {first}", self.count))
            }
        };
        AuditEntry { check, status }
    }
}

/// Audits a strategy claimed equitable + informative + perfectly δ-secure,
/// where δ is expected to be `d - 1` for `d = a - c`.
///
/// Nothing here errors: every finding, including re-verification failures,
/// becomes a report entry. Consequences are asserted only when the claims
/// re-verify and the `b >= d-1` gate holds.
pub fn necessary_condition_audit(strategy: &Strategy, delta: u32, budget: Budget) -> AuditReport {
    let deal = strategy.deal();
    let (a, b, c, n) = (deal.a(), deal.b(), deal.c(), deal.n());
    let d = a.saturating_sub(c);
    let mut entries = Vec::new();

    // Deals with a <= c+1 cannot be informative and weakly 1-secure at
    // once; verify both and report whichever fails (at least one must).
    if a <= c + 1 {
        let informative = is_informative(strategy).informative;
        let weak = weak_security_check_with_budget(strategy, 1, budget)
            .map(|v| v.holds)
            .unwrap_or(false);
        let detail = match (informative, weak) {
            (true, true) => {
                // Unreachable if the checkers are sound.
                "a <= c+1 yet both informative and weakly 1-secure: checker contradiction".to_string()
            }
            (true, false) => format!(
                "a={a} <= c+1={}: no informative strategy can be weakly 1-secure; weak 1-security indeed fails",
                c + 1
            ),
            (false, _) => format!(
                "a={a} <= c+1={}: no informative strategy can be weakly 1-secure; informativeness indeed fails",
                c + 1
            ),
        };
        entries.push(AuditEntry {
            check: AuditCheck::ParameterRange,
            status: AuditStatus::Violation(detail),
        });
        return AuditReport { d, delta, entries };
    }
    entries.push(AuditEntry {
        check: AuditCheck::ParameterRange,
        status: AuditStatus::Pass,
    });

    let gamma = equitability(strategy);
    entries.push(AuditEntry {
        check: AuditCheck::ClaimEquitable,
        status: match gamma {
            Some(_) => AuditStatus::Pass,
            None => AuditStatus::Violation("strategy is not equitable".to_string()),
        },
    });

    let informative = is_informative(strategy);
    entries.push(AuditEntry {
        check: AuditCheck::ClaimInformative,
        status: if informative.informative {
            AuditStatus::Pass
        } else {
            AuditStatus::Violation(format!("{:?}", informative.failure))
        },
    });

    let perfect = perfect_security_check_with_budget(strategy, delta, budget);
    let perfect_holds = matches!(&perfect, Ok(v) if v.holds);
    entries.push(AuditEntry {
        check: AuditCheck::ClaimPerfectSecurity,
        status: match &perfect {
            Ok(v) if v.holds => AuditStatus::Pass,
            Ok(v) => {
                AuditStatus::Violation(format!("perfect {delta}-security fails at {:?}", v.witness))
            }
            Err(e) => {
                AuditStatus::Violation(format!("perfect {delta}-security not checkable: {e}"))
            }
        },
    });

    if b < d - 1 {
        entries.push(AuditEntry {
            check: AuditCheck::BobLargeEnough,
            status: AuditStatus::Skipped(format!(
                "b={b} < d-1={}: consequences are not asserted below this gate",
                d - 1
            )),
        });
        return AuditReport { d, delta, entries };
    }
    entries.push(AuditEntry {
        check: AuditCheck::BobLargeEnough,
        status: AuditStatus::Pass,
    });

    let claims_hold = gamma.is_some() && informative.informative && perfect_holds && delta >= d - 1;
    if !claims_hold {
        let reason = "claims did not re-verify at level d-1; consequences skipped".to_string();
        for check in [
            AuditCheck::AliceIsDPlusOne,
            AuditCheck::AnnouncementsAreDesigns,
            AuditCheck::SubhandsArePossible,
            AuditCheck::TwoInTwoOut,
            AuditCheck::NeighborhoodEquality,
        ] {
            entries.push(AuditEntry {
                check,
                status: AuditStatus::Skipped(reason.clone()),
            });
        }
        return AuditReport { d, delta, entries };
    }

    entries.push(AuditEntry {
        check: AuditCheck::AliceIsDPlusOne,
        status: if a == d + 1 {
            AuditStatus::Pass
        } else {
            AuditStatus::Violation(format!("a={a} but d+1={}", d + 1))
        },
    });

    // Consequence checks scan everything and report the total count with
    // the first offending instance.
    let mut design_tally = Tally::new();
    for (i, ann) in strategy.announcements().iter().enumerate() {
        let design = Design::new(n, a, ann.hands().to_vec(), true);
        let ok = match design {
            Ok(design) => design_lambda(&design, d).ok().flatten() == Some(1),
            Err(_) => false,
        };
        if !ok {
            design_tally.hit(|| {
                format!(
                    "announcement {} is not a {d}-({n},{},1) design",
                    i + 1,
                    d + 1
                )
            });
        }
    }
    entries.push(design_tally.entry(AuditCheck::AnnouncementsAreDesigns));

    let mut possible_tally = Tally::new();
    for (i, ann) in strategy.announcements().iter().enumerate() {
        for hand in ann.hands() {
            for y in crate::design::subsets_of(hand, c) {
                if possible_hands(ann, &y).is_empty() {
                    possible_tally.hit(|| {
                        format!(
                            "P({y}, {}) is empty although {y} sits inside hand {hand}",
                            i + 1
                        )
                    });
                }
            }
        }
    }
    entries.push(possible_tally.entry(AuditCheck::SubhandsArePossible));

    let d_minus_1_subsets = k_subsets(n, d - 1);
    let mut inout_tally = Tally::new();
    for (i, ann) in strategy.announcements().iter().enumerate() {
        for sub in &d_minus_1_subsets {
            let inside = ann.hands().iter().filter(|h| h.contains_all(sub)).count();
            let outside = ann.len() - inside;
            if inside < 2 || outside < 2 {
                inout_tally.hit(|| {
                    format!(
                        "announcement {}: subset {sub} is contained in {inside} hands and avoided by {outside}",
                        i + 1
                    )
                });
            }
        }
    }
    entries.push(inout_tally.entry(AuditCheck::TwoInTwoOut));

    let mut nbhd_tally = Tally::new();
    for (i, ann) in strategy.announcements().iter().enumerate() {
        for x in 0..d_minus_1_subsets.len() {
            for y in (x + 1)..d_minus_1_subsets.len() {
                let (dx, dy) = (&d_minus_1_subsets[x], &d_minus_1_subsets[y]);
                let (_, nx) = block_neighborhood(ann, dx);
                let (_, ny) = block_neighborhood(ann, dy);
                if nx.difference(dy) != ny.difference(dx) {
                    nbhd_tally.hit(|| {
                        format!("announcement {}: N({dx}) \\ {dy} != N({dy}) \\ {dx}", i + 1)
                    });
                }
            }
        }
    }
    entries.push(nbhd_tally.entry(AuditCheck::NeighborhoodEquality));

    AuditReport { d, delta, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::strategy_331_m10;
    use crate::deal::DealSpec;
    use crate::hand::Hand;
    use crate::strategy::Announcement;

    #[test]
    fn equitable_sts7_strategy_audits_clean() {
        let report = necessary_condition_audit(&strategy_331_m10(), 1, Budget::default());
        assert_eq!(report.d, 2);
        assert!(report.passes(), "violations: {:?}", report.entries);
    }

    #[test]
    fn consequences_are_gated_on_bob_size() {
        // (4,1,1): d = 3 but b = 1 < d-1, so consequences are skipped; the
        // failed security claim is still reported.
        let deal = DealSpec::new(4, 1, 1).unwrap();
        let anns = crate::subsets::k_subsets(6, 4)
            .into_iter()
            .map(|h| Announcement::new(vec![h]).unwrap())
            .collect();
        let s = Strategy::new(deal, anns).unwrap();
        let report = necessary_condition_audit(&s, 2, Budget::default());
        assert!(!report.passes());
        let gate = report
            .entries
            .iter()
            .find(|e| e.check == AuditCheck::BobLargeEnough)
            .unwrap();
        assert!(matches!(&gate.status, AuditStatus::Skipped(msg) if msg.contains("b=1 < d-1=2")));
        assert!(!report
            .entries
            .iter()
            .any(|e| e.check == AuditCheck::AliceIsDPlusOne));
    }

    #[test]
    fn small_a_claims_are_rejected() {
        // (2,3,1): a = c+1; informative partition strategy (one-factors of
        // K6) claiming weak security must produce a violation.
        let deal = DealSpec::new(2, 3, 1).unwrap();
        let factors: [[[u32; 2]; 3]; 5] = [
            [[0, 5], [1, 4], [2, 3]],
            [[1, 5], [2, 0], [3, 4]],
            [[2, 5], [3, 1], [4, 0]],
            [[3, 5], [4, 2], [0, 1]],
            [[4, 5], [0, 3], [1, 2]],
        ];
        let anns = factors
            .iter()
            .map(|f| Announcement::new(f.iter().map(|p| Hand::new(*p).unwrap()).collect()).unwrap())
            .collect();
        let s = Strategy::new(deal, anns).unwrap();
        let report = necessary_condition_audit(&s, 1, Budget::default());
        assert_eq!(report.violations(), 1);
        assert_eq!(report.entries[0].check, AuditCheck::ParameterRange);
    }
}
