use super::*;
use crate::lang::parse;

const FUEL: u64 = 1000;

fn table(src: &str) -> DefinitionTable {
    let t = parse(src).unwrap();
    crate::lang::validate(&t).unwrap();
    t
}

#[test]
fn stop_halts() {
    let t = table("procedure stop; begin end");
    assert_eq!(
        run(&t, "stop", &[] as &[&str], FUEL),
        Outcome::Halted {
            output: String::new(),
            value: None,
            steps: 1
        }
    );
}

#[test]
fn go_diverges_immediately() {
    let t = table("procedure go; begin go end");
    let out = run(&t, "go", &[] as &[&str], FUEL);
    // [tail call go, return]: the tail call rebuilds the initial frame.
    assert_eq!(
        out,
        Outcome::Diverges {
            witness: Cycle {
                first: 0,
                second: 1
            },
            steps: 1
        }
    );
    let Outcome::Diverges { witness, .. } = out else {
        unreachable!()
    };
    assert!(Interpreter::new(&t).replay_cycle("go", Kind::Procedure, &[] as &[&str], witness));
}

#[test]
fn missing_entry_faults() {
    let t = table("procedure stop; begin end");
    let out = run(&t, "missing", &[] as &[&str], 10);
    assert!(matches!(
        out,
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::UndefinedName,
                ..
            },
            steps: 0,
            ..
        }
    ));
}

#[test]
fn print_a() {
    let t = table("procedure printA; begin print ('A') end");
    let out = run(&t, "printA", &[] as &[&str], FUEL);
    assert!(matches!(out, Outcome::Halted { ref output, .. } if output == "A"));
}

#[test]
fn always_true() {
    let t = table("function alwaysTrue (p, i: string): boolean; begin alwaysTrue := true end");
    let out = eval_fn(&t, "alwaysTrue", &["x", "x"], FUEL);
    assert_eq!(out.value(), Some(true));
}

#[test]
fn looper_cycles_after_one_recursion() {
    let t = table("function looper (p, i: string): boolean; begin looper := looper (p, i) end");
    let out = eval_fn(&t, "looper", &["x", "x"], FUEL);
    // Hand trace: push p, push i, tail call back to the entry configuration.
    assert_eq!(
        out,
        Outcome::Diverges {
            witness: Cycle {
                first: 0,
                second: 3
            },
            steps: 3
        }
    );
}

#[test]
fn forgetful_faults() {
    let t = table("function forgetful: boolean; begin end");
    let out = eval_fn(&t, "forgetful", &[] as &[&str], FUEL);
    assert!(matches!(
        out,
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::NoResultAssigned,
                ..
            },
            ..
        }
    ));
}

#[test]
fn header_only_call_faults() {
    let t = table("function halts (p, i: string): boolean;");
    let out = eval_fn(&t, "halts", &["a", "a"], FUEL);
    assert!(matches!(
        out,
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::MissingBody,
                ..
            },
            ..
        }
    ));
}

#[test]
fn wrong_entry_kind_and_arity() {
    let t = table("procedure p (s: string); begin end; function f: boolean; begin f := true end");
    assert!(matches!(
        run(&t, "p", &[] as &[&str], FUEL),
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::Arity,
                ..
            },
            ..
        }
    ));
    assert!(matches!(
        run(&t, "f", &[] as &[&str], FUEL),
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::Type,
                ..
            },
            ..
        }
    ));
}

#[test]
fn printing_loop_is_a_cycle() {
    let t = table("procedure chatter (s: string); begin print (s); chatter (s) end");
    let out = run(&t, "chatter", &["hi"], FUEL);
    assert!(out.is_diverges(), "{out}");
}

#[test]
fn non_tail_recursion_runs_out_of_fuel() {
    let t = table("procedure deep; begin deep; print ('x') end");
    assert_eq!(
        run(&t, "deep", &[] as &[&str], DEFAULT_FUEL),
        Outcome::FuelExhausted {
            steps: DEFAULT_FUEL,
            limit: Limit::Steps,
        }
    );
}

#[test]
fn growing_argument_runs_out_of_fuel() {
    let t = table("procedure grow (s: string); begin grow (concat (s, 'x')) end");
    assert_eq!(
        run(&t, "grow", &[""], 500),
        Outcome::FuelExhausted {
            steps: 500,
            limit: Limit::Steps
        }
    );
    match run(&t, "grow", &[""], DEFAULT_FUEL) {
        Outcome::FuelExhausted { limit, .. } => assert_eq!(limit, Limit::Memory),
        other => panic!("{other}"),
    }
}

#[test]
fn string_builtins() {
    let t = table(
        "procedure stop; begin end;
         procedure show (s: string);
         begin
           print (length (s)); print ('|');
           print (charat (s, '1')); print ('|');
           print (charat (s, '99')); print ('|');
           print (concat (s, s)); print ('|');
           print (lookup ('stop'))
         end",
    );
    let out = run(&t, "show", &["abc"], FUEL);
    assert!(
        matches!(out, Outcome::Halted { ref output, .. } if output == "3|b||abcabc|procedure stop; begin end"),
        "{out}"
    );
}

#[test]
fn bad_charat_index_and_lookup_miss() {
    let t = table(
        "procedure idx; begin print (charat ('abc', 'x')) end;
         procedure miss; begin print (lookup ('nosuch')) end",
    );
    assert!(matches!(
        run(&t, "idx", &[] as &[&str], FUEL),
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::Type,
                ..
            },
            ..
        }
    ));
    assert!(matches!(
        run(&t, "miss", &[] as &[&str], FUEL),
        Outcome::Fault {
            fault: Fault {
                kind: FaultKind::LookupMiss,
                ..
            },
            ..
        }
    ));
}

#[test]
fn output_survives_fault() {
    let t = table("procedure p; begin print ('partial'); print (lookup ('x')) end");
    assert!(matches!(
        run(&t, "p", &[] as &[&str], FUEL),
        Outcome::Fault { ref output, .. } if output == "partial"
    ));
}

#[test]
fn else_branch_and_mutual_recursion() {
    let t = table(
        "procedure ping (s: string); begin if s = 'stop' then print ('done') else pong (s) end;
         procedure pong (s: string); begin ping (s) end",
    );
    assert!(run(&t, "ping", &["loop"], FUEL).is_diverges());
    assert!(run(&t, "ping", &["stop"], FUEL).is_halted());
}

#[test]
fn diag_against_constant_deciders() {
    let t = table(
        "function yes (p, i: string): boolean; begin yes := true end;
         function no (p, i: string): boolean; begin no := false end;
         procedure dy (s: string); begin if yes (s, s) then dy (s) end;
         procedure dn (s: string); begin if no (s, s) then dn (s) end",
    );
    let i = Interpreter::new(&t);
    let out = i.run("dy", &["dy"], FUEL);
    let Outcome::Diverges { witness, .. } = out else {
        panic!("{out}")
    };
    assert!(i.replay_cycle("dy", Kind::Procedure, &["dy"], witness));
    assert!(i.run("dn", &["dn"], FUEL).is_halted());
}

#[test]
fn replay_rejects_bogus_witness() {
    let t = table("procedure grow (s: string); begin grow (concat (s, 'x')) end");
    let i = Interpreter::new(&t);
    assert!(!i.replay_cycle(
        "grow",
        Kind::Procedure,
        &[""],
        Cycle {
            first: 1,
            second: 5
        }
    ));
    assert!(!i.replay_cycle(
        "grow",
        Kind::Procedure,
        &[""],
        Cycle {
            first: 3,
            second: 3
        }
    ));
}

#[test]
fn trace_emits_one_line_per_step() {
    let t = table("procedure stop; begin end; procedure p; begin stop; print ('x') end");
    let mut lines = Vec::new();
    let out =
        Interpreter::new(&t).run_traced("p", Kind::Procedure, &[] as &[&str], FUEL, &mut |l| {
            lines.push(l)
        });
    assert_eq!(lines.len() as u64, out.steps());
    assert_eq!(lines[0].definition, "p");
    assert_eq!(lines[1].definition, "stop");
    assert_eq!(lines[1].depth, 2);
}

#[test]
fn fuel_monotonicity_on_small_cases() {
    let t = table(
        "procedure stop; begin end; procedure go; begin go end;
         procedure grow (s: string); begin grow (concat (s, 'x')) end",
    );
    for (name, args) in [("stop", vec![]), ("go", vec![]), ("grow", vec!["a"])] {
        let base = run(&t, name, &args, 50);
        for f in [50, 51, 200, 5000] {
            let out = run(&t, name, &args, f);
            if !matches!(base, Outcome::FuelExhausted { .. }) {
                assert_eq!(out, base);
            }
        }
    }
}

#[test]
fn doubling_strings_hit_the_memory_budget() {
    let t = table("procedure dbl (s: string); begin dbl (concat (s, s)) end");
    match run(&t, "dbl", &["x"], DEFAULT_FUEL) {
        Outcome::FuelExhausted { steps, limit } => {
            assert_eq!(limit, Limit::Memory);
            assert!(steps < 1000, "{steps}");
        }
        other => panic!("{other}"),
    }
}
