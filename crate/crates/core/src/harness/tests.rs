use super::*;

fn quick(check: CheckId, trials: usize) -> CheckReport {
    let cfg = CheckConfig {
        trials,
        ..CheckConfig::new(check, 7)
    };
    run_check(&cfg).unwrap()
}

#[test]
fn ids_round_trip() {
    for id in CheckId::ALL {
        assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
    }
    assert_eq!("lem50".parse::<CheckId>().unwrap(), CheckId::Lem50);
    assert!(matches!("P999".parse::<CheckId>(), Err(Error::UnknownCheckId(_))));
}

#[test]
fn zero_trials_rejected() {
    let cfg = CheckConfig {
        trials: 0,
        ..CheckConfig::new(CheckId::A90, 1)
    };
    assert!(run_check(&cfg).is_err());
}

#[test]
fn trials_are_replayable() {
    let cfg = CheckConfig {
        trials: 5,
        ..CheckConfig::new(CheckId::P70, 11)
    };
    let a: alloc::vec::Vec<Outcome> = (0..5).map(|t| run_trial(&cfg, t)).collect();
    let b: alloc::vec::Vec<Outcome> = (0..5).map(|t| run_trial(&cfg, t)).collect();
    assert_eq!(a, b);
    let mut r1 = quick(CheckId::F20, 6);
    let mut r2 = quick(CheckId::F20, 6);
    r1.elapsed = None;
    r2.elapsed = None;
    assert_eq!(r1, r2);
}

#[test]
fn counterexamples_all_pass() {
    for id in [CheckId::A90, CheckId::A140] {
        let r = quick(id, id.default_trials());
        assert_eq!(r.passes, r.trials, "{id}: {:?}", r.counterexample);
    }
}

#[test]
fn every_check_runs() {
    for id in CheckId::ALL {
        let r = quick(id, 3);
        assert!(r.ok(), "{id}: {:?}", r.counterexample);
        assert_eq!(r.passes + r.fails + r.inconclusive, 3);
    }
}
