//! Deterministic synthetic Java trees for throughput and determinism tests.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

const NOUNS: &[&str] = &[
    "node",
    "element",
    "entity",
    "parser",
    "reader",
    "writer",
    "buffer",
    "stream",
    "token",
    "value",
    "attribute",
    "child",
    "index",
    "cache",
    "config",
    "session",
    "request",
    "response",
    "handler",
    "listener",
    "event",
    "message",
    "record",
    "table",
    "column",
    "row",
    "query",
    "result",
    "shape",
    "color",
    "layer",
    "image",
    "file",
    "path",
    "document",
    "schema",
    "count",
    "size",
    "name",
    "key",
    "item",
    "entry",
    "box",
    "match",
    "class",
    "status",
];
const VERBS: &[&str] = &[
    "get", "set", "parse", "read", "write", "create", "build", "load", "save", "find", "update",
    "remove", "add", "draw", "render", "process", "handle", "validate", "resolve", "compute",
    "format", "copy", "merge", "sort", "filter", "open", "close",
];
const INFLECTED: &[&str] = &[
    "parsed",
    "reading",
    "written",
    "created",
    "loaded",
    "nodes",
    "entries",
    "indices",
    "children",
    "matches",
    "boxes",
    "cached",
    "drawing",
    "wrote",
    "performed",
    "classes",
    "stopped",
    "copies",
];
const ADJECTIVES: &[&str] = &[
    "default", "current", "next", "last", "first", "raw", "valid", "empty", "local", "remote",
    "pending", "active",
];
const ACRONYMS: &[&str] = &["XML", "HTTP", "URL", "IO", "ID", "UTF8"];
const TYPES: &[&str] = &[
    "int",
    "long",
    "String",
    "boolean",
    "double",
    "java.util.List<String>",
    "Object[]",
];

/// xorshift64*; fixed seeds give identical trees on every platform.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    fn pick<'a>(&mut self, items: &[&'a str]) -> &'a str {
        items[self.below(items.len())]
    }
}

fn capitalize(word: &str) -> String {
    let mut c = word.chars();
    match c.next() {
        Some(f) => f.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

fn noun_phrase(rng: &mut Rng) -> Vec<String> {
    let mut words = Vec::new();
    match rng.below(6) {
        0 => words.push(rng.pick(ADJECTIVES).to_owned()),
        1 => words.push(rng.pick(ACRONYMS).to_owned()),
        2 => words.push(rng.pick(INFLECTED).to_owned()),
        _ => {}
    }
    words.push(rng.pick(NOUNS).to_owned());
    if rng.below(3) == 0 {
        words.push(rng.pick(NOUNS).to_owned());
    }
    words
}

fn camel(words: &[String], upper_first: bool) -> String {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if w.chars()
                .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
            {
                w.clone()
            } else if i == 0 && !upper_first {
                w.to_ascii_lowercase()
            } else {
                capitalize(w)
            }
        })
        .collect()
}

fn class_name(rng: &mut Rng) -> String {
    camel(&noun_phrase(rng), true)
}

fn field_name(rng: &mut Rng) -> String {
    let words = noun_phrase(rng);
    if rng.below(5) == 0 {
        words
            .iter()
            .map(|w| w.to_ascii_uppercase())
            .collect::<Vec<_>>()
            .join("_")
    } else {
        let name = camel(&words, false);
        if name.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
            format!("the{name}")
        } else {
            name
        }
    }
}

fn method_name(rng: &mut Rng) -> String {
    let mut words = vec![rng.pick(VERBS).to_owned()];
    words.extend(noun_phrase(rng));
    camel(&words, false)
}

fn method_body(rng: &mut Rng, out: &mut String) {
    let lines = 4 + rng.below(6);
    for i in 0..lines {
        match rng.below(5) {
            0 => writeln!(
                out,
                "        int local{i} = {} * {};",
                rng.below(100),
                rng.below(10)
            )
            .unwrap(),
            1 => writeln!(
                out,
                "        // {} the {} before use",
                rng.pick(VERBS),
                rng.pick(NOUNS)
            )
            .unwrap(),
            2 => writeln!(
                out,
                "        String text{i} = \"{} {{ }} ; class Fake {{}}\";",
                rng.pick(NOUNS)
            )
            .unwrap(),
            3 => {
                writeln!(
                    out,
                    "        for (int k = 0; k < {}; k++) {{",
                    rng.below(9) + 1
                )
                .unwrap();
                writeln!(
                    out,
                    "            helper(k, '{}');",
                    if rng.below(2) == 0 { '}' } else { '{' }
                )
                .unwrap();
                writeln!(out, "        }}").unwrap();
            }
            _ => writeln!(out, "        if (helper({i}, 'x') > 0) {{ return; }}").unwrap(),
        }
    }
}

fn java_file(rng: &mut Rng, package: &str, class: &str) -> String {
    let mut out = String::new();
    writeln!(out, "package {package};\n").unwrap();
    writeln!(out, "import java.util.List;\nimport java.util.ArrayList;\n").unwrap();
    writeln!(out, "/**\n * Generated class {class}.\n */").unwrap();
    let flavor = rng.below(10);
    if flavor == 0 {
        writeln!(out, "public enum {class} {{").unwrap();
        let constants = (0..3 + rng.below(4))
            .map(|_| rng.pick(NOUNS).to_ascii_uppercase())
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "    {constants};\n").unwrap();
    } else {
        writeln!(out, "public class {class} {{\n").unwrap();
    }

    for _ in 0..4 + rng.below(5) {
        let ty = rng.pick(TYPES);
        writeln!(out, "    private {ty} {};", field_name(rng)).unwrap();
    }
    writeln!(out).unwrap();

    writeln!(
        out,
        "    private static int helper(int k, char c) {{\n        return k + c;\n    }}\n"
    )
    .unwrap();
    for _ in 0..6 + rng.below(5) {
        let ty = rng.pick(TYPES);
        let annotation = if rng.below(4) == 0 {
            "    @Deprecated\n"
        } else {
            ""
        };
        writeln!(
            out,
            "{annotation}    public void {}({ty} arg, int count) {{",
            method_name(rng)
        )
        .unwrap();
        method_body(rng, &mut out);
        writeln!(out, "    }}\n").unwrap();
    }

    if rng.below(3) == 0 {
        writeln!(out, "    static class {} {{", class_name(rng)).unwrap();
        writeln!(out, "        int {};", field_name(rng)).unwrap();
        writeln!(out, "        void {}() {{ }}", method_name(rng)).unwrap();
        writeln!(out, "    }}").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Writes Java files under `root` until at least `min_lines` lines exist.
/// Returns the number of lines written.
pub fn generate_tree(root: &Path, seed: u64, min_lines: usize) -> usize {
    let mut rng = Rng(seed.max(1));
    let mut lines = 0;
    let mut file = 0;
    while lines < min_lines {
        let package = format!("gen.module{}", file % 7);
        let class = format!("{}{file}", class_name(&mut rng));
        let text = java_file(&mut rng, &package, &class);
        let dir = root.join(package.replace('.', "/"));
        fs::create_dir_all(&dir).expect("create package dir");
        fs::write(dir.join(format!("{class}.java")), &text).expect("write java file");
        lines += text.lines().count();
        file += 1;
    }
    lines
}
