//! Worked examples with known answers, used by tests and the
//! `paper-examples` command.

use serde::Serialize;

use super::detect_large;
use crate::error::Result;
use crate::report::Status;
use crate::resolve::{linearity_defect, FDModule};
use crate::ringcore::{annihilator, Ring, RingIdeal, RingSpec};
use crate::series::{golod_map_check_ideal, golod_ring_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Holds,
    Fails,
    Evidence,
}

impl Expect {
    fn matches(&self, s: Status) -> bool {
        matches!(
            (self, s),
            (Expect::Holds, Status::HoldsDecisive)
                | (Expect::Fails, Status::FailsDecisive)
                | (Expect::Evidence, Status::EvidenceUpTo(_))
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Expectation {
    /// Status and rule tag of `detect_large`.
    Large(Expect, &'static str),
    /// `R` passes the Golod check through `N`.
    GolodRing(bool),
    /// `R → R/mI` passes the Golod-map check through `N`.
    GolodMapMI(bool),
    /// `R → R/(0:m)` passes the Golod-map check through `N`.
    GolodMapSocle(bool),
    /// `R/I` has an acyclic linear part through `N`.
    KoszulModule(bool),
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    /// Ring-spec text, including the ideal.
    pub spec: &'static str,
    pub expect: &'static [Expectation],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Fixture {
    pub fn ring_spec(&self) -> RingSpec {
        RingSpec::parse(self.spec).expect("bundled fixture parses")
    }

    pub fn ring(&self) -> Result<Ring> {
        self.ring_spec().build_ring()
    }

    pub fn ideal_in(&self, ring: &Ring) -> Result<RingIdeal> {
        RingSpec::ideal_in(ring, self.ring_spec().ideal.as_deref().unwrap_or(&[]))
    }

    /// Evaluate every expectation at truncation `n`.
    pub fn run(&self, n: usize) -> Result<Vec<FixtureOutcome>> {
        let ring = self.ring()?;
        let ideal = self.ideal_in(&ring)?;
        let mut out = Vec::new();
        let flag = |b: bool| if b { "holds" } else { "fails" }.to_string();
        for e in self.expect {
            let o = match *e {
                Expectation::Large(status, rule) => {
                    let r = detect_large(&ideal, n)?;
                    FixtureOutcome {
                        check: "check-large".into(),
                        expected: format!("{status:?} via {rule}"),
                        actual: format!("{} via {}", r.status().name(), r.verdict.rule),
                        ok: status.matches(r.status()) && r.verdict.rule == rule,
                    }
                }
                Expectation::GolodRing(b) => {
                    let r = golod_ring_check(&ring, n)?;
                    FixtureOutcome {
                        check: "check-golod-ring".into(),
                        expected: flag(b),
                        actual: flag(r.status().is_positive()),
                        ok: r.status().is_positive() == b,
                    }
                }
                Expectation::GolodMapMI(b) => {
                    let r = golod_map_check_ideal(&ideal.times_maximal(), n)?;
                    FixtureOutcome {
                        check: "check-golod-map R -> R/mI".into(),
                        expected: flag(b),
                        actual: flag(r.status().is_positive()),
                        ok: r.status().is_positive() == b,
                    }
                }
                Expectation::GolodMapSocle(b) => {
                    let socle = annihilator(&RingIdeal::maximal(&ring));
                    let r = golod_map_check_ideal(&socle, n)?;
                    FixtureOutcome {
                        check: "check-golod-map R -> R/(0:m)".into(),
                        expected: flag(b),
                        actual: flag(r.status().is_positive()),
                        ok: r.status().is_positive() == b,
                    }
                }
                Expectation::KoszulModule(b) => {
                    let ld = linearity_defect(&FDModule::cyclic(&ideal)?, n)?;
                    FixtureOutcome {
                        check: "koszul-module".into(),
                        expected: flag(b),
                        actual: flag(ld.koszul_to_n),
                        ok: ld.koszul_to_n == b,
                    }
                }
            };
            out.push(o);
        }
        Ok(out)
    }
}

use Expect::*;
use Expectation::*;

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "diagonal-form",
        summary: "k[x,y,z]/(x^2,y^2,z^2) with I = (x+y+z): R/I is not a complete intersection",
        spec: "p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\nideal = x+y+z\n",
        expect: &[Large(Fails, "Thm-CI(2)"), GolodMapMI(true)],
    },
    Fixture {
        name: "non-golod",
        summary: "k[x,y,z]/(x^2,xy,xz,y^2,z^2) with I = (x): R/I = k[y,z]/(y^2,z^2), so R is not Golod",
        spec: "p = 5\nvars = x, y, z\nrelations = x^2, xy, xz, y^2, z^2\nideal = x\n",
        expect: &[Large(Holds, "quotient-CI"), GolodRing(false)],
    },
    Fixture {
        name: "fiber-product",
        summary: "k[x]/(x^2) x_k k[y,z]/(y^2,yz,z^3) with I = (x): m = I ⊕ (y,z)",
        spec: "p = 5\nvars = x, y, z\nrelations = x^2, xy, xz, y^2, yz, z^3\nideal = x\n",
        expect: &[Large(Holds, "splitting")],
    },
    Fixture {
        name: "fiber-product-ci",
        summary: "k[x,y]/(xy,x^2,y^3) with I = (x): R/I = k[y]/(y^3)",
        spec: "p = 5\nvars = x, y\nrelations = xy, x^2, y^3\nideal = x\n",
        expect: &[Large(Holds, "quotient-CI")],
    },
    Fixture {
        name: "quotient-ci",
        summary: "k[x,y]/(x^2,y^2) with I = (x): R/I = k[y]/(y^2)",
        spec: "p = 5\nvars = x, y\nrelations = x^2, y^2\nideal = x\n",
        expect: &[Large(Holds, "quotient-CI"), GolodRing(false), GolodMapMI(true)],
    },
    Fixture {
        name: "gorenstein-short",
        summary: "k[x,y]/(x^2-y^2,xy), Gorenstein with m^3 = 0, I = (x)",
        spec: "p = 5\nvars = x, y\nrelations = x^2-y^2, xy\nideal = x\n",
        expect: &[Large(Holds, "quotient-CI"), KoszulModule(true), GolodMapSocle(true)],
    },
    Fixture {
        name: "power-2-2",
        summary: "k[x,y]/(x,y)^2 with I = (x)",
        spec: "p = 5\nvars = x, y\nrelations = x^2, xy, y^2\nideal = x\n",
        expect: &[Large(Holds, "Q/n^p"), GolodRing(true)],
    },
    Fixture {
        name: "power-3-2",
        summary: "k[x,y,z]/(x,y,z)^2 with I = (x, y+z)",
        spec: "p = 5\nvars = x, y, z\nrelations = x^2, xy, xz, y^2, yz, z^2\nideal = x, y+z\n",
        expect: &[Large(Holds, "Q/n^p"), GolodRing(true)],
    },
    Fixture {
        name: "power-2-3",
        summary: "k[x,y]/(x,y)^3 with I = (x+2y)",
        spec: "p = 5\nvars = x, y\nrelations = x^3, x^2y, xy^2, y^3\nideal = x+2y\n",
        expect: &[Large(Holds, "Q/n^p"), GolodRing(true)],
    },
    Fixture {
        name: "power-3-3",
        summary: "k[x,y,z]/(x,y,z)^3 with I = (y, x+z)",
        spec: "p = 5\nvars = x, y, z\nrelations = x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3\nideal = y, x+z\n",
        expect: &[Large(Holds, "Q/n^p"), GolodRing(true)],
    },
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
