//! Name-keyed lookup of multiplier symbols, e.g. `lambda:0.5`, `riesz:1`,
//! `t1:640:l1`, `lowpass:16`.

use super::symbol::{Axis, Direction, MultiplierSymbol, Symbol};
use crate::error::{Error, Result};

type Builder = fn(&[&str]) -> Result<Box<dyn Symbol>>;

struct Entry {
    name: &'static str,
    usage: &'static str,
    build: Builder,
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot read {what} from '{s}'")))
}

fn arity(args: &[&str], n: usize, usage: &str) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidArgument(format!("expected {usage}")));
    }
    Ok(())
}

fn axis(s: &str) -> Result<Axis> {
    Axis::try_from(num::<usize>(s, "axis")?)
}

fn direction(s: &str) -> Result<Direction> {
    match s {
        "l1" => Ok(Direction::L1),
        "l2" => Ok(Direction::L2),
        _ => Err(Error::InvalidArgument(format!(
            "direction must be l1 or l2, got '{s}'"
        ))),
    }
}

fn boxed(m: MultiplierSymbol) -> Result<Box<dyn Symbol>> {
    Ok(Box::new(m))
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "lambda",
        usage: "lambda:S",
        build: |a| {
            arity(a, 1, "lambda:S")?;
            boxed(MultiplierSymbol::LambdaS(num(a[0], "exponent")?))
        },
    },
    Entry {
        name: "riesz",
        usage: "riesz:J",
        build: |a| {
            arity(a, 1, "riesz:J")?;
            boxed(MultiplierSymbol::Riesz(axis(a[0])?))
        },
    },
    Entry {
        name: "riesz_odd",
        usage: "riesz_odd:J",
        build: |a| {
            arity(a, 1, "riesz_odd:J")?;
            boxed(MultiplierSymbol::RieszOdd(axis(a[0])?))
        },
    },
    Entry {
        name: "t1",
        usage: "t1:LAMBDA:l1|l2",
        build: |a| {
            arity(a, 2, "t1:LAMBDA:l1|l2")?;
            boxed(MultiplierSymbol::T1 {
                lambda: num(a[0], "lambda")?,
                dir: direction(a[1])?,
            })
        },
    },
    Entry {
        name: "t2",
        usage: "t2:LAMBDA:l1|l2",
        build: |a| {
            arity(a, 2, "t2:LAMBDA:l1|l2")?;
            boxed(MultiplierSymbol::T2 {
                lambda: num(a[0], "lambda")?,
                dir: direction(a[1])?,
            })
        },
    },
    Entry {
        name: "lowpass",
        usage: "lowpass:MU",
        build: |a| {
            arity(a, 1, "lowpass:MU")?;
            boxed(MultiplierSymbol::LowPass(num(a[0], "mu")?))
        },
    },
    Entry {
        name: "fat_lowpass",
        usage: "fat_lowpass:MU",
        build: |a| {
            arity(a, 1, "fat_lowpass:MU")?;
            boxed(MultiplierSymbol::FatLowPass(num(a[0], "mu")?))
        },
    },
    Entry {
        name: "inv_div",
        usage: "inv_div:I",
        build: |a| {
            arity(a, 1, "inv_div:I")?;
            boxed(MultiplierSymbol::InvDivComponent(axis(a[0])?))
        },
    },
    Entry {
        name: "d",
        usage: "d:J",
        build: |a| {
            arity(a, 1, "d:J")?;
            boxed(MultiplierSymbol::Partial(axis(a[0])?))
        },
    },
];

/// Parses `name:arg:arg…` into a symbol.
pub fn lookup(spec: &str) -> Result<Box<dyn Symbol>> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default().trim();
    let args: Vec<&str> = parts.map(str::trim).collect();
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown symbol '{name}' (known: {})",
            names().join(", ")
        ))
    })?;
    (entry.build)(&args).map_err(|e| match e {
        Error::InvalidArgument(m) => {
            Error::InvalidArgument(format!("{m} (usage: {})", entry.usage))
        }
        other => other,
    })
}

/// Usage strings of every registered symbol.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.usage).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::WaveVector;

    #[test]
    fn parses_every_entry() {
        for spec in [
            "lambda:-0.5",
            "riesz:2",
            "riesz_odd:1",
            "t1:640:l1",
            "t2:10:l2",
            "lowpass:16",
            "fat_lowpass:4.5",
            "inv_div:1",
            "d:2",
        ] {
            let s = lookup(spec).unwrap();
            assert!(!s.label().is_empty());
        }
        let s = lookup("riesz_odd:2").unwrap();
        assert!((s.eval(WaveVector::new(1, 1)).re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(lookup("nope:1").is_err());
        assert!(lookup("riesz:3").is_err());
        assert!(lookup("t1:10").is_err());
        assert!(lookup("t1:10:l3").is_err());
    }
}
