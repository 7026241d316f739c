use crate::error::CliError;

const RANGE_EPS: f64 = 1e-12;

/// Parses `a` or `a:b:step` into an inclusive grid. Grid points are rounded
/// to twelve decimals so `0.1:0.5:0.1` prints as written.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("bad number `{s}` in range `{text}`")))
    };
    match parts.as_slice() {
        [a] => Ok(vec![num(a)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step <= 0.0 {
                return Err(CliError::Usage(format!("range step must be positive in `{text}`")));
            }
            if b < a {
                return Err(CliError::Usage(format!("range end is below its start in `{text}`")));
            }
            let mut out = Vec::new();
            for i in 0.. {
                let v = a + i as f64 * step;
                if v > b + RANGE_EPS {
                    break;
                }
                out.push(if (v - b).abs() <= RANGE_EPS {
                    b
                } else {
                    (v * 1e12).round() / 1e12
                });
                if out.len() > 1_000_000 {
                    return Err(CliError::Usage(format!("range `{text}` has too many points")));
                }
            }
            Ok(out)
        }
        _ => Err(CliError::Usage(format!("expected a or a:b:step, got `{text}`"))),
    }
}

/// Comma-separated coordinates.
pub fn parse_coords(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad coordinate `{s}` in `{text}`")))
        })
        .collect()
}
