//! Typewriter-layout SVG and HTML rendering of a [`TagCloud`].
//!
//! Tags flow left to right in cloud order and wrap to a new row when the
//! next tag would cross the page edge. Font size is linear in weight between
//! the configured minimum and maximum.

pub mod metrics;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cloudmodel::TagCloud;

pub use metrics::text_width;

const FONT_FAMILY: &str = "Helvetica, Arial, sans-serif";
/// Baseline position within a row, as a fraction of the row's font size.
const ASCENT: f64 = 0.8;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("weight {weight} outside [{min}, {max}] or below 1")]
    WeightOutOfRange {
        weight: usize,
        min: usize,
        max: usize,
    },
    #[error("minimum font size {min} exceeds maximum {max}")]
    FontRange { min: f64, max: f64 },
    #[error("page width must be positive")]
    PageWidth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RenderConfig {
    pub page_width_px: f64,
    pub min_font_pt: f64,
    pub max_font_pt: f64,
    pub line_gap_px: f64,
    pub title_case: bool,
    pub label_color: String,
    pub freq_color: String,
    pub background: String,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            page_width_px: 1000.0,
            min_font_pt: 10.0,
            max_font_pt: 40.0,
            line_gap_px: 8.0,
            title_case: false,
            label_color: "black".to_owned(),
            freq_color: "red".to_owned(),
            background: "white".to_owned(),
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.page_width_px.is_nan() || self.page_width_px <= 0.0 {
            return Err(RenderError::PageWidth);
        }
        if self.min_font_pt.is_nan()
            || self.max_font_pt.is_nan()
            || self.min_font_pt > self.max_font_pt
        {
            return Err(RenderError::FontRange {
                min: self.min_font_pt,
                max: self.max_font_pt,
            });
        }
        Ok(())
    }

    fn margin(&self) -> f64 {
        if self.page_width_px > 40.0 {
            10.0
        } else {
            0.0
        }
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

pub fn font_size_for(
    weight: usize,
    min_weight: usize,
    max_weight: usize,
    cfg: &RenderConfig,
) -> Result<f64, RenderError> {
    if min_weight < 1 || weight < min_weight || weight > max_weight {
        return Err(RenderError::WeightOutOfRange {
            weight,
            min: min_weight,
            max: max_weight,
        });
    }
    if min_weight == max_weight {
        return Ok(cfg.min_font_pt);
    }
    let t = (weight - min_weight) as f64 / (max_weight - min_weight) as f64;
    Ok(round2(
        cfg.min_font_pt + t * (cfg.max_font_pt - cfg.min_font_pt),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacedTag {
    pub label: String,
    /// `[weight]` when frequencies are shown.
    pub frequency: Option<String>,
    pub font_size: f64,
    pub x: f64,
    pub frequency_x: f64,
    pub baseline: f64,
    pub width: f64,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub tags: Vec<PlacedTag>,
    /// Rightmost extent of each row, measured from the left margin.
    pub row_widths: Vec<f64>,
    pub usable_width: f64,
    pub height: f64,
}

fn display_label(stem: &str, title_case: bool) -> String {
    if !title_case {
        return stem.to_owned();
    }
    let mut chars = stem.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn layout(cloud: &TagCloud, cfg: &RenderConfig) -> Result<Layout, RenderError> {
    cfg.validate()?;
    let margin = cfg.margin();
    let usable = cfg.page_width_px - 2.0 * margin;
    let (min_w, max_w) = (cloud.min_weight(), cloud.max_weight());

    // First pass: sizes and row assignment.
    let mut items = Vec::with_capacity(cloud.tags.len());
    let mut row_widths: Vec<f64> = Vec::new();
    let mut cursor = 0.0;
    for tag in &cloud.tags {
        let size = font_size_for(tag.weight, min_w, max_w, cfg)?;
        let label = display_label(&tag.stem, cfg.title_case);
        let label_w = text_width(&label, size);
        let space = text_width(" ", size);
        let frequency = cloud
            .filters
            .show_frequency
            .then(|| format!("[{}]", tag.weight));
        let width = label_w
            + frequency
                .as_deref()
                .map_or(0.0, |f| space + text_width(f, size));

        let starts_row = match row_widths.last() {
            None => true,
            Some(_) => cursor + space + width > usable,
        };
        let x = if starts_row {
            row_widths.push(width);
            0.0
        } else {
            cursor + space
        };
        cursor = x + width;
        *row_widths.last_mut().expect("row exists") = cursor;
        items.push(PlacedTag {
            label,
            frequency,
            font_size: size,
            x: margin + x,
            frequency_x: margin + x + label_w + space,
            baseline: 0.0,
            width,
            row: row_widths.len() - 1,
        });
    }

    // Second pass: baselines from each row's tallest font.
    let mut row_top = margin;
    let mut row_baselines = Vec::with_capacity(row_widths.len());
    for row in 0..row_widths.len() {
        let tallest = items
            .iter()
            .filter(|t| t.row == row)
            .map(|t| t.font_size)
            .fold(0.0, f64::max);
        row_baselines.push(row_top + ASCENT * tallest);
        row_top += tallest + cfg.line_gap_px;
    }
    for item in &mut items {
        item.baseline = row_baselines[item.row];
    }
    let height = if row_widths.is_empty() {
        2.0 * margin
    } else {
        row_top - cfg.line_gap_px + margin
    };
    Ok(Layout {
        tags: items,
        row_widths,
        usable_width: usable,
        height: height.ceil(),
    })
}

/// Shortest decimal with at most two fractional digits.
fn num(v: f64) -> String {
    let s = format!("{:.2}", round2(v));
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

pub fn render_svg(cloud: &TagCloud, cfg: &RenderConfig) -> Result<String, RenderError> {
    let layout = layout(cloud, cfg)?;
    let width = num(cfg.page_width_px);
    let height = num(layout.height);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "<title>{} ({})</title>",
        escape(&cloud.corpus_label),
        cloud.kind
    );
    let _ = writeln!(
        out,
        "<rect width=\"100%\" height=\"100%\" fill=\"{}\"/>",
        escape(&cfg.background)
    );
    let _ = writeln!(out, "<g font-family=\"{FONT_FAMILY}\">");
    for tag in &layout.tags {
        let _ = write!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\"><tspan fill=\"{}\">{}</tspan>",
            num(tag.x),
            num(tag.baseline),
            num(tag.font_size),
            escape(&cfg.label_color),
            escape(&tag.label)
        );
        if let Some(freq) = &tag.frequency {
            let _ = write!(
                out,
                "<tspan x=\"{}\" fill=\"{}\">{}</tspan>",
                num(tag.frequency_x),
                escape(&cfg.freq_color),
                freq
            );
        }
        out.push_str("</text>\n");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn render_html(cloud: &TagCloud, cfg: &RenderConfig) -> Result<String, RenderError> {
    let layout = layout(cloud, cfg)?;
    let bg = escape(&cfg.background);
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(
        out,
        "<title>{} ({})</title>",
        escape(&cloud.corpus_label),
        cloud.kind
    );
    out.push_str("</head>\n");
    let _ = writeln!(out, "<body style=\"margin:0;background:{bg}\">");
    let _ = writeln!(
        out,
        "<div class=\"tag-cloud\" style=\"width:{}px;padding:{}px;box-sizing:border-box;font-family:{FONT_FAMILY};line-height:1;background:{bg}\">",
        num(cfg.page_width_px),
        num(cfg.margin())
    );
    for tag in &layout.tags {
        let _ = write!(
            out,
            "<span class=\"tag\" style=\"display:inline-block;margin:0 0 {}px 0;font-size:{}pt;color:{}\">{}",
            num(cfg.line_gap_px),
            num(tag.font_size),
            escape(&cfg.label_color),
            escape(&tag.label)
        );
        if let Some(freq) = &tag.frequency {
            let _ = write!(
                out,
                " <span class=\"freq\" style=\"color:{}\">{}</span>",
                escape(&cfg.freq_color),
                freq
            );
        }
        out.push_str("</span>\n");
    }
    out.push_str("</div>\n</body>\n</html>\n");
    Ok(out)
}
