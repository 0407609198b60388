use super::element::{BranchPairs, TreeDiagram};
use super::tree::parse_branch;
use crate::error::{parse_err, Error, Result};
use crate::rewriting::strip_comment;

/// One `u -> v` branch pair per line; `ε` or `-` is the empty branch.
pub fn parse_element(text: &str) -> Result<TreeDiagram> {
    parse_block(text, 0)
}

pub fn format_element(g: &TreeDiagram) -> String {
    g.to_branch_pairs().to_string()
}

/// A word such as `x0 X1 x2^3 x0^-2` in the standard generators; capital
/// letters denote inverses.
pub fn parse_f_word(s: &str) -> Result<TreeDiagram> {
    let mut acc = TreeDiagram::identity();
    for tok in s.split_whitespace() {
        let bad = || parse_err(1, format!("bad generator `{tok}`"));
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let (inverse, index) = match base.strip_prefix('x') {
            Some(rest) => (false, rest),
            None => (true, base.strip_prefix('X').ok_or_else(bad)?),
        };
        let n: usize = index.parse().map_err(|_| bad())?;
        let g = TreeDiagram::x(n).pow(if inverse { -exp } else { exp });
        acc = acc.multiply(&g);
    }
    Ok(acc)
}

fn parse_block(text: &str, first_line: usize) -> Result<TreeDiagram> {
    let mut pairs = Vec::new();
    let mut word: Option<TreeDiagram> = None;
    let mut anchor = first_line + 1;
    for (i, raw) in text.lines().enumerate() {
        let line_no = first_line + i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(w) = line.strip_prefix("word:") {
            if word.is_some() || !pairs.is_empty() {
                return Err(parse_err(
                    line_no,
                    "a block holds either one word or a table",
                ));
            }
            word = Some(parse_f_word(w).map_err(|e| parse_err(line_no, e.to_string()))?);
            continue;
        }
        if word.is_some() {
            return Err(parse_err(
                line_no,
                "a block holds either one word or a table",
            ));
        }
        let bad = || parse_err(line_no, format!("expected `u -> v`, got `{line}`"));
        let (u, v) = line.split_once("->").ok_or_else(bad)?;
        let u = parse_branch(u.trim()).ok_or_else(bad)?;
        let v = parse_branch(v.trim()).ok_or_else(bad)?;
        if pairs.is_empty() {
            anchor = line_no;
        }
        pairs.push((u, v));
    }
    if let Some(g) = word {
        return Ok(g);
    }
    if pairs.is_empty() {
        return Err(parse_err(anchor, "empty element"));
    }
    let b = BranchPairs::new(pairs).map_err(|e| parse_err(anchor, e.to_string()))?;
    Ok(TreeDiagram::from_branch_pairs(&b))
}

/// Elements separated by lines consisting of `---`.
pub fn parse_generators(text: &str) -> Result<Vec<TreeDiagram>> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut start = 0;
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            if !strip_all(&block).is_empty() {
                out.push(parse_block(&block, start)?);
            }
            block.clear();
            start = i + 1;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    if !strip_all(&block).is_empty() {
        out.push(parse_block(&block, start)?);
    }
    if out.is_empty() {
        return Err(Error::NoGenerators);
    }
    Ok(out)
}

fn strip_all(block: &str) -> String {
    block.lines().map(strip_comment).collect()
}

pub fn format_generators(gens: &[TreeDiagram]) -> String {
    gens.iter()
        .map(format_element)
        .collect::<Vec<_>>()
        .join("---\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let text = "# x0\n00 -> 0\n01 -> 10\n1 -> 11\n";
        let g = parse_element(text).unwrap();
        assert_eq!(g, TreeDiagram::x0());
        assert_eq!(parse_element(&format_element(&g)).unwrap(), g);
        assert_eq!(parse_element("- -> ε").unwrap(), TreeDiagram::identity());
    }

    #[test]
    fn words() {
        assert_eq!(parse_f_word("x0 X0").unwrap(), TreeDiagram::identity());
        assert_eq!(parse_f_word("x0^2").unwrap(), TreeDiagram::x0().pow(2));
        assert_eq!(parse_f_word("X0 x1 x0").unwrap(), TreeDiagram::x(2));
        assert!(parse_f_word("y0").is_err());
    }

    #[test]
    fn generator_files() {
        let text = "word: x0\n---\n0 -> 0\n100 -> 10\n101 -> 110\n11 -> 111\n---\n";
        let gens = parse_generators(text).unwrap();
        assert_eq!(gens, vec![TreeDiagram::x0(), TreeDiagram::x1()]);
        assert_eq!(parse_generators(&format_generators(&gens)).unwrap(), gens);
        assert!(parse_generators("# nothing\n").is_err());
        let err = parse_generators("word: x0\n---\n0 -> 1\n").unwrap_err();
        assert!(err.to_string().contains('3'), "{err}");
    }
}
