use schwarz_gap_core::Scalar;

/// Parses `3`, `-1.5`, `2i`, `-i`, `1+2i`, `1e-3-4.5i`.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("'{s}' is not a number of the form re, im i or re+im i");
    let finite = |v: f64| if v.is_finite() { Ok(v) } else { Err(bad()) };
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map_err(|_| bad()).and_then(finite).map(|re| Scalar::new(re, 0.0));
    };
    let unit = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse::<f64>().map_err(|_| bad()).and_then(finite),
        }
    };
    // Split at the last sign that is not an exponent sign or the leading one.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        None => Ok(Scalar::new(0.0, unit(body)?)),
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad()).and_then(finite)?;
            Ok(Scalar::new(re, unit(&body[k..])?))
        }
    }
}

/// `m1,M1,m2,M2`.
pub fn parse_box(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("--box takes m1,M1,m2,M2; got '{s}'"));
    }
    let mut out = [0.0; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("--box: '{p}' is not a number"))?;
    }
    Ok(out)
}
