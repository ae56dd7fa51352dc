use std::sync::Arc;

use super::parse::strip_comment;
use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

/// A homomorphism from a finite group to itself, stored as a total image table.
#[derive(Debug, Clone)]
pub struct Endomorphism {
    group: Arc<FiniteGroup>,
    image: Vec<u32>,
}

impl PartialEq for Endomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.image == other.image
    }
}

impl Endomorphism {
    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        Endomorphism {
            group: Arc::clone(group),
            image: (0..group.order() as u32).collect(),
        }
    }

    /// The endomorphism sending everything to the identity.
    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Endomorphism {
            group: Arc::clone(group),
            image: vec![0; group.order()],
        }
    }

    /// Extends the images of the generators along each element's BFS word and
    /// validates the result.
    pub fn from_generator_images(group: &Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator images, got {}",
                group.generators().len(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidArgument(format!("image {bad} out of range")));
        }
        let n = group.order();
        let mut image = vec![0u32; n];
        let mut done = vec![false; n];
        done[0] = true;
        for g in 1..n {
            if done[g] {
                continue;
            }
            // Walk up the BFS tree to a computed ancestor, then fill back down.
            let mut chain = Vec::new();
            let mut x = g;
            while !done[x] {
                chain.push(x);
                x = group.parent[x] as usize;
            }
            for &y in chain.iter().rev() {
                let p = group.parent[y] as usize;
                let s = group.via[y] as usize;
                image[y] = group.mult(image[p] as usize, images[s]) as u32;
                done[y] = true;
            }
        }
        let endo = Endomorphism {
            group: Arc::clone(group),
            image,
        };
        endo.validate()?;
        Ok(endo)
    }

    /// Wraps a full image table, validating the homomorphism property.
    pub fn from_table(group: &Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        if image.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "image table has {} entries, expected {}",
                image.len(),
                group.order()
            )));
        }
        if image.iter().any(|&x| x >= group.order()) {
            return Err(Error::InvalidArgument("image out of range".into()));
        }
        let endo = Endomorphism {
            group: Arc::clone(group),
            image: image.into_iter().map(|x| x as u32).collect(),
        };
        endo.validate()?;
        Ok(endo)
    }

    /// Checks `f(s*y) = f(s)*f(y)` for every generator `s` and every `y`.
    fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.image[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        for (s, &x) in g.generators().iter().enumerate() {
            let fx = self.apply(x);
            for y in 0..g.order() {
                if self.apply(g.left_gen(s, y)) != g.mult(fx, self.apply(y)) {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g] as usize
    }

    pub fn image_table(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            group: Arc::clone(&self.group),
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(g, &x)| g == x as usize)
    }
}

/// Builds the endomorphism sending generator `i` to the value of `words[i]`.
pub fn build_endomorphism(group: &Arc<FiniteGroup>, words: &[Word]) -> Result<Endomorphism> {
    let images: Vec<usize> = words.iter().map(|w| evaluate_word(group, w)).collect::<Result<_>>()?;
    Endomorphism::from_generator_images(group, &images)
}

pub fn evaluate_word(group: &FiniteGroup, word: &[Letter]) -> Result<usize> {
    let mut acc = 0;
    for letter in word {
        let Some(&x) = group.generators().get(letter.generator) else {
            return Err(Error::InvalidArgument(format!(
                "no generator with index {}",
                letter.generator
            )));
        };
        let x = if letter.inverse { group.inv(x) } else { x };
        acc = group.mult(acc, x);
    }
    Ok(acc)
}

/// `φ` composed with itself `n` times.
pub fn endo_power(phi: &Endomorphism, n: u32) -> Endomorphism {
    assert!(n >= 1, "endo_power needs n >= 1");
    let mut result = Endomorphism::identity(&phi.group);
    let mut base = phi.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = result.compose(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.compose(&base);
        }
    }
    result
}

/// Parses an endomorphism file: one `map <gen>: <word>` line per generator.
///
/// Words juxtapose generator names, with a trailing `'` marking an inverse;
/// `a b' a`, `ab'a` and `a b'a` are equivalent when names are unambiguous.
/// An empty word, `1` or `e` (when not a generator name) denote the identity.
pub fn parse_endomorphism(group: &Arc<FiniteGroup>, text: &str) -> Result<Endomorphism> {
    let ngens = group.generators().len();
    let mut words: Vec<Option<Word>> = vec![None; ngens];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `map <gen>: <word>`"))?;
        let mut parts = key.split_whitespace();
        let (Some("map"), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(line_no, "expected `map <gen>: <word>`"));
        };
        let gen = group
            .generator_index(name)
            .ok_or_else(|| Error::parse(line_no, format!("unknown generator `{name}`")))?;
        if words[gen].is_some() {
            return Err(Error::parse(line_no, format!("generator `{name}` mapped twice")));
        }
        words[gen] = Some(parse_word(group, value).map_err(|m| Error::parse(line_no, m))?);
    }
    let words = words
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| {
                Error::parse(
                    0,
                    format!("no image given for generator `{}`", group.generator_names()[i]),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    build_endomorphism(group, &words)
}

/// Parses a word over the group's generator names.
pub fn parse_word(group: &FiniteGroup, text: &str) -> std::result::Result<Word, String> {
    let names = group.generator_names();
    let text = text.trim();
    if text.is_empty() || ((text == "1" || text == "e") && group.generator_index(text).is_none()) {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for token in text.split_whitespace() {
        let mut rest = token;
        while !rest.is_empty() {
            // Longest generator name that prefixes the remaining token.
            let best = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            let Some((gen, name)) = best else {
                return Err(format!("cannot read a generator name at `{rest}`"));
            };
            rest = &rest[name.len()..];
            let mut inverse = false;
            while let Some(r) = rest.strip_prefix('\'') {
                inverse = !inverse;
                rest = r;
            }
            word.push(Letter {
                generator: gen,
                inverse,
            });
        }
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let mut text = format!("kind: table\norder: {n}\ngen t: 1\n");
        for g in 0..n {
            let row: Vec<String> = (0..n).map(|h| ((g + h) % n).to_string()).collect();
            text.push_str(&format!("row {g}: {}\n", row.join(" ")));
        }
        load_group(&text).unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        load_group("kind: permutation\ndegree: 3\ngen a: 2 1 3\ngen b: 2 3 1\n").unwrap()
    }

    #[test]
    fn identity_words_give_identity() {
        let g = s3();
        let phi = parse_endomorphism(&g, "map a: a\nmap b: b\n").unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn negation_on_z6() {
        let g = cyclic(6);
        let phi = parse_endomorphism(&g, "map t: t t t t t").unwrap();
        for x in 0..6 {
            assert_eq!(phi.apply(x), (6 - x) % 6);
        }
        let psi = parse_endomorphism(&g, "map t: t'").unwrap();
        assert_eq!(phi, psi);
        assert!(endo_power(&phi, 2).is_identity());
    }

    #[test]
    fn s3_automorphism_brute_force() {
        let g = s3();
        let phi = parse_endomorphism(&g, "map a: a\nmap b: bb").unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(phi.apply(g.mult(x, y)), g.mult(phi.apply(x), phi.apply(y)));
            }
        }
        assert!(phi.is_bijective());
    }

    #[test]
    fn doubling_on_z7_has_order_three() {
        let g = cyclic(7);
        let phi = parse_endomorphism(&g, "map t: t t").unwrap();
        let cube = endo_power(&phi, 3);
        assert!(cube.is_identity());
        assert_eq!(endo_power(&phi, 1), phi);
    }

    #[test]
    fn non_homomorphism_reports_witness() {
        let g = s3();
        // a -> b has order mismatch: b has order 3, a has order 2.
        let err = parse_endomorphism(&g, "map a: b\nmap b: b").unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { .. }));
    }

    #[test]
    fn trivial_map_accepts_empty_words() {
        let g = s3();
        let phi = parse_endomorphism(&g, "map a:\nmap b: 1").unwrap();
        assert_eq!(phi, Endomorphism::trivial(&g));
    }

    #[test]
    fn endomorphism_file_errors() {
        let g = s3();
        for text in [
            "map a: a",
            "map a: a\nmap b: c",
            "map a: a\nmap a: a\nmap b: b",
            "a: a\nb: b",
        ] {
            assert!(
                matches!(parse_endomorphism(&g, text), Err(Error::Parse { .. })),
                "{text}"
            );
        }
    }
}
