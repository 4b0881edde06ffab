//! Fixed sans-serif advance widths, in thousandths of an em.
//!
//! Values follow the classic Helvetica metrics. Characters outside the table
//! use [`DEFAULT_ADVANCE`], which is close to the average lowercase advance.

pub const DEFAULT_ADVANCE: u32 = 550;

const LOWER: [u32; 26] = [
    556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, // a-m
    556, 556, 556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, // n-z
];

const UPPER: [u32; 26] = [
    667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, // A-M
    722, 778, 667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, // N-Z
];

pub fn advance(c: char) -> u32 {
    match c {
        'a'..='z' => LOWER[c as usize - 'a' as usize],
        'A'..='Z' => UPPER[c as usize - 'A' as usize],
        '0'..='9' => 556,
        ' ' | '[' | ']' => 278,
        _ => DEFAULT_ADVANCE,
    }
}

/// Width of `text` in pixels at `font_size`.
pub fn text_width(text: &str, font_size: f64) -> f64 {
    let units: u32 = text.chars().map(advance).sum();
    f64::from(units) * font_size / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_advances() {
        assert_eq!(advance('i'), 222);
        assert_eq!(advance('m'), 833);
        assert_eq!(advance('W'), 944);
        assert_eq!(advance('é'), DEFAULT_ADVANCE);
    }

    #[test]
    fn width_scales_with_size() {
        // d=556 r=333 a=556 w=722
        assert!((text_width("draw", 10.0) - 21.67).abs() < 1e-9);
        assert!((text_width("draw", 20.0) - 43.34).abs() < 1e-9);
        assert_eq!(text_width("", 30.0), 0.0);
    }

    #[test]
    fn lowercase_average_near_aspect_model() {
        let avg = LOWER.iter().sum::<u32>() as f64 / 26.0;
        assert!((avg / 1000.0 - 0.55).abs() < 0.1);
    }
}
