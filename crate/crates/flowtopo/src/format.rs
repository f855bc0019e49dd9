/// Fixed 17-significant-digit scientific notation; parses back to the same
/// `f64`.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Short label for plot axes.
pub fn fmt_short(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.2e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.0, 1.0, -0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, f64::MAX] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn short_labels() {
        assert_eq!(fmt_short(0.25), "0.25");
        assert_eq!(fmt_short(2.0), "2");
        assert_eq!(fmt_short(1.5e-6), "1.50e-6");
    }
}
