use lclkit::classifier::{Classification, Complexity, CountClass};

use Complexity::{Constant as C1, Linear as Lin, LogStar as Log, NotApplicable as NA};

/// One column of the classification table.
pub struct Row {
    pub types: &'static [&'static str],
    // repeatable, flexible, loop, mirror-flexible, mirror-flexible loop
    pub props: [bool; 5],
    // solvable cycles, solvable paths, unsolvable cycles, unsolvable paths:
    // "inf", "fin" (finite, possibly zero), "0", or "any"
    pub counts: [&'static str; 4],
    // directed cycles, directed paths, undirected cycles, undirected paths (symmetric case)
    pub complexity: [Complexity; 4],
}

pub const TABLE: &[Row] = &[
    Row { types: &["A"], props: [true, true, true, true, true], counts: ["inf", "inf", "0", "fin"], complexity: [C1, C1, C1, C1] },
    Row { types: &["B"], props: [true, true, true, true, false], counts: ["inf", "inf", "0", "fin"], complexity: [C1, C1, Log, Log] },
    Row { types: &["C", "D"], props: [true, true, true, false, false], counts: ["inf", "inf", "0", "fin"], complexity: [C1, C1, Lin, Lin] },
    Row { types: &["E"], props: [true, true, false, true, false], counts: ["inf", "inf", "fin", "fin"], complexity: [Log, Log, Log, Log] },
    Row { types: &["F", "G"], props: [true, true, false, false, false], counts: ["inf", "inf", "fin", "fin"], complexity: [Log, Log, Lin, Lin] },
    Row { types: &["H", "I"], props: [true, false, false, false, false], counts: ["inf", "inf", "inf", "any"], complexity: [Lin, Lin, Lin, Lin] },
    // cycles are never solvable; their complexity entries are reported as O(1)
    Row { types: &["J", "K"], props: [false, false, false, false, false], counts: ["0", "fin", "inf", "inf"], complexity: [C1, C1, C1, C1] },
];

fn count_matches(c: &CountClass, want: &str) -> bool {
    match want {
        "inf" => matches!(c, CountClass::Infinite { .. }),
        "fin" => matches!(c, CountClass::Zero | CountClass::Finite { .. }),
        "0" => *c == CountClass::Zero,
        _ => true,
    }
}

pub fn check_row(name: &str, c: &Classification, row: &Row) {
    let r = &c.path_properties;
    let props = [r.has_repeatable, r.has_flexible, r.has_loop, r.has_mirror_flexible, r.has_mirror_flexible_loop];
    assert_eq!(props, row.props, "{name} properties");
    let s = &c.solvability;
    let counts = [&s.solvable_cycles, &s.solvable_paths, &s.unsolvable_cycles, &s.unsolvable_paths];
    for (got, want) in counts.iter().zip(row.counts) {
        assert!(count_matches(got, want), "{name}: {got:?} vs {want}");
    }
    let x = &c.complexity;
    let mut want = row.complexity;
    if !c.symmetric {
        want[2] = NA;
        want[3] = NA;
    }
    assert_eq!([x.directed_cycles, x.directed_paths, x.undirected_cycles, x.undirected_paths], want, "{name}");
}

