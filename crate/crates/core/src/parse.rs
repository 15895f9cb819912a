//! Parsers for command-line values. Each one rejects rather than panics on
//! any input.
//!
//! | syntax                     | meaning                                      |
//! |----------------------------|----------------------------------------------|
//! | `2.5`, `inf`               | a single order                               |
//! | `1.5,2,inf`                | an explicit, strictly increasing order list  |
//! | `lin:START:STOP:COUNT`     | `COUNT` evenly spaced orders, ends included  |
//! | `log:START:STOP:COUNT`     | `COUNT` orders evenly spaced in `ln alpha`   |

use crate::domain::{Order, PowerVector};
use crate::error::{Error, Result};
use crate::verify::GridDensity;

/// Largest point count accepted by `lin:`/`log:` grids.
pub const MAX_GRID_POINTS: usize = 100_000;

fn number(s: &str) -> Result<f64> {
    let s = s.trim();
    match s.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => return Ok(f64::INFINITY),
        _ => {}
    }
    let v: f64 = s.parse().map_err(|_| Error::Parse(format!("`{s}` is not a number")))?;
    if v.is_nan() || v.is_infinite() {
        return Err(Error::Parse(format!(
            "`{s}` is not a finite number; spell infinity as `inf`"
        )));
    }
    Ok(v)
}

fn list(s: &str) -> Result<Vec<&str>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(s.split(',').collect())
}

pub fn parse_order(s: &str) -> Result<Order> {
    let alpha = number(s)?;
    Order::new(alpha).map_err(|_| Error::Parse(format!("order must exceed 1, got `{}`", s.trim())))
}

/// Comma-separated nonnegative entropy powers.
pub fn parse_powers(s: &str) -> Result<PowerVector> {
    let values = list(s)?
        .into_iter()
        .map(|item| {
            let v = number(item)?;
            if v.is_infinite() {
                return Err(Error::Parse("entropy powers must be finite".into()));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    PowerVector::new(values).map_err(|e| Error::Parse(e.to_string()))
}

/// Comma-separated nonzero, finite filter taps. Signs are kept.
pub fn parse_taps(s: &str) -> Result<Vec<f64>> {
    list(s)?
        .into_iter()
        .map(|item| {
            let v = number(item)?;
            if v == 0.0 || v.is_infinite() {
                return Err(Error::Parse(format!(
                    "tap `{}` must be finite and nonzero",
                    item.trim()
                )));
            }
            Ok(v)
        })
        .collect()
}

/// Comma-separated summand counts, each at least 1.
pub fn parse_counts(s: &str) -> Result<Vec<usize>> {
    list(s)?
        .into_iter()
        .map(|item| match item.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Parse(format!("`{}` is not a positive integer", item.trim()))),
        })
        .collect()
}

/// A non-empty, strictly increasing list of orders; see the module table.
pub fn parse_alpha_grid(s: &str) -> Result<Vec<Order>> {
    let s = s.trim();
    let grid = if let Some(rest) = s.strip_prefix("lin:") {
        range(rest, false)?
    } else if let Some(rest) = s.strip_prefix("log:") {
        range(rest, true)?
    } else {
        list(s)?.into_iter().map(parse_order).collect::<Result<Vec<_>>>()?
    };
    for w in grid.windows(2) {
        if !(w[1].alpha() > w[0].alpha()) {
            return Err(Error::Parse(format!(
                "order grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(grid)
}

fn range(spec: &str, logarithmic: bool) -> Result<Vec<Order>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(Error::Parse(format!("range needs START:STOP:COUNT, got `{spec}`")));
    };
    let (start, stop) = (number(start)?, number(stop)?);
    if start.is_infinite() || stop.is_infinite() {
        return Err(Error::Parse(
            "range ends must be finite; append `,inf` with an explicit list".into(),
        ));
    }
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{count}` is not a point count")))?;
    if !(1..=MAX_GRID_POINTS).contains(&count) {
        return Err(Error::Parse(format!(
            "point count must be in 1..={MAX_GRID_POINTS}, got {count}"
        )));
    }
    if count == 1 && start != stop {
        return Err(Error::Parse("a one-point range needs START == STOP".into()));
    }
    for end in [start, stop] {
        if !(end > 1.0) {
            return Err(Error::Parse(format!("orders must exceed 1, got {end}")));
        }
    }
    let (a, b) = if logarithmic {
        (start.ln(), stop.ln())
    } else {
        (start, stop)
    };
    (0..count)
        .map(|i| {
            let v = if count == 1 {
                a
            } else {
                a + (b - a) * i as f64 / (count - 1) as f64
            };
            let alpha = if i + 1 == count {
                stop
            } else if logarithmic {
                v.exp()
            } else {
                v
            };
            Order::new(alpha).map_err(|_| Error::Parse(format!("order {alpha} does not exceed 1")))
        })
        .collect()
}

/// A grid density from `x,f` CSV text.
pub fn parse_grid_csv(text: &str) -> Result<GridDensity> {
    GridDensity::read_csv(text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn orders() {
        assert!(parse_order("inf").unwrap().is_infinite());
        assert!(parse_order(" Infinity ").unwrap().is_infinite());
        assert_eq!(parse_order("2").unwrap().alpha(), 2.0);
        for bad in ["1", "0.5", "nan", "", "two", "1e400"] {
            assert!(parse_order(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn powers_and_taps() {
        assert_eq!(parse_powers("10, 20,90").unwrap().as_slice(), &[10.0, 20.0, 90.0]);
        assert!(parse_powers("").is_err());
        assert!(parse_powers("1,-1").is_err());
        assert!(parse_powers("1,inf").is_err());
        assert!(parse_powers("1,,2").is_err());
        assert_eq!(parse_taps("2,-1,-1").unwrap(), vec![2.0, -1.0, -1.0]);
        assert!(parse_taps("1,0").is_err());
        assert_eq!(parse_counts("2,3,10").unwrap(), vec![2, 3, 10]);
        assert!(parse_counts("0").is_err());
        assert!(parse_counts("2.5").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_alpha_grid("1.5,2,inf").unwrap();
        assert_eq!(g.len(), 3);
        assert!(g[2].is_infinite());
        let g = parse_alpha_grid("lin:2:4:3").unwrap();
        assert_eq!(g.iter().map(|o| o.alpha()).collect::<Vec<_>>(), vec![2.0, 3.0, 4.0]);
        let g = parse_alpha_grid("log:1.01:10000:200").unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0].alpha(), 1.01);
        assert_eq!(g[199].alpha(), 10000.0);
        assert_eq!(parse_alpha_grid("lin:3:3:1").unwrap().len(), 1);
        for bad in [
            "",
            "2,1.5",
            "2,2",
            "lin:1:4:3",
            "lin:2:4",
            "log:2:inf:5",
            "lin:2:4:0",
            "lin:2:3:1",
            "lin:2:4:x",
        ] {
            assert!(parse_alpha_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_csv() {
        let f = parse_grid_csv("x,f\n0,1\n0.5,1\n1,1\n").unwrap();
        assert_eq!(f.len(), 3);
        assert!((f.mass() - 1.0).abs() < 1e-15);
        assert!(parse_grid_csv("").is_err());
        assert!(parse_grid_csv("x,f\n0,0\n1,0\n").is_err());
    }

    proptest! {
        #[test]
        fn parsers_never_panic(s in "\\PC{0,40}") {
            let _ = parse_order(&s);
            let _ = parse_powers(&s);
            let _ = parse_taps(&s);
            let _ = parse_counts(&s);
            let _ = parse_alpha_grid(&s);
            let _ = parse_grid_csv(&s);
        }

        #[test]
        fn listed_grids_round_trip(mut alphas in prop::collection::vec(1.001f64..1e6, 1..20)) {
            alphas.sort_by(f64::total_cmp);
            alphas.dedup();
            let text = alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
            let grid = parse_alpha_grid(&text).unwrap();
            prop_assert_eq!(grid.iter().map(|o| o.alpha()).collect::<Vec<_>>(), alphas);
        }
    }
}
