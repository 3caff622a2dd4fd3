/// Parses `3`, `1,2,5`, `1..4` (inclusive) or any comma-joined mix.
pub fn parse_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo = number(lo)?;
            let hi = number(hi.trim_start_matches('='))?;
            if lo > hi {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(number(item)?);
        }
    }
    if out.is_empty() {
        return Err(format!("no values in `{spec}`"));
    }
    Ok(out)
}

fn number(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

/// Splits `qft:4..8` into the generator name and its sizes.
pub fn parse_gen(spec: &str) -> Result<(String, Vec<usize>), String> {
    let (name, sizes) = spec
        .split_once(':')
        .ok_or_else(|| format!("expected `<name>:<size>`, got `{spec}`"))?;
    Ok((name.to_string(), parse_list(sizes)?))
}
