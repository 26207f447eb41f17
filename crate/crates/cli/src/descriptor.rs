//! Text forms of sequences and word streams.
//!
//! Sequences:
//! - `geodesic:<plus>;<minus>;<offset>`
//! - `rays:<p1>;<xi1>;<s1>;<p2>;<xi2>;<s2>`
//! - `orbit:<word>;<x>;<y>`
//! - `bounded:<anchor>;<p>;<xi>`
//!
//! Word streams: `word:<letters>`, `power:<letters>:<count>`, `random:<len>`.

use horobound::geodesic::ParamGeodesic;
use horobound::group::GroupPresentation;
use horobound::product::{ProductPoint, StructuredSequence};
use horobound::space::ray;
use horobound::Scalar;
use rand_chacha::ChaCha8Rng;

use crate::config::UsageError;
use crate::sampling::{random_word, HarnessModel};

fn fields<'a>(body: &'a str, count: usize, what: &str) -> Result<Vec<&'a str>, UsageError> {
    let parts: Vec<&str> = body.split(';').map(str::trim).collect();
    if parts.len() != count {
        return Err(UsageError(format!("{what} takes {count} fields separated by ';', got {}", parts.len())));
    }
    Ok(parts)
}

fn speed<M: HarnessModel>(m: &M, s: &str) -> Result<M::Scalar, UsageError> {
    let v = m.parse_scalar(s)?;
    if v < M::Scalar::zero() {
        return Err(UsageError(format!("speed {s} is negative")));
    }
    Ok(v)
}

pub fn parse_sequence<M: HarnessModel>(
    m: &M,
    group: &GroupPresentation<M>,
    text: &str,
) -> Result<StructuredSequence<M>, UsageError> {
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| UsageError(format!("sequence {text:?} has no kind, expected e.g. geodesic:...")))?;
    match kind.trim() {
        "geodesic" => {
            let f = fields(body, 3, "geodesic")?;
            let g = ParamGeodesic::new(m, &m.parse_ideal(f[0])?, &m.parse_ideal(f[1])?, m.parse_scalar(f[2])?)?;
            Ok(StructuredSequence::GeodesicPair(g))
        }
        "rays" => {
            let f = fields(body, 6, "rays")?;
            Ok(StructuredSequence::RayPair {
                first: ray(&m.parse_point(f[0])?, &m.parse_ideal(f[1])?),
                first_speed: speed(m, f[2])?,
                second: ray(&m.parse_point(f[3])?, &m.parse_ideal(f[4])?),
                second_speed: speed(m, f[5])?,
            })
        }
        "orbit" => {
            let f = fields(body, 3, "orbit")?;
            let generator = group.evaluate(m, &group.parse_word(f[0])?);
            let seed = ProductPoint::new(m.parse_point(f[1])?, m.parse_point(f[2])?);
            Ok(StructuredSequence::Orbit { generator, seed })
        }
        "bounded" => {
            let f = fields(body, 3, "bounded")?;
            Ok(StructuredSequence::BoundedFirst {
                anchor: m.parse_point(f[0])?,
                ray: ray(&m.parse_point(f[1])?, &m.parse_ideal(f[2])?),
            })
        }
        other => Err(UsageError(format!("unknown sequence kind {other:?}, expected geodesic, rays, orbit or bounded"))),
    }
}

pub fn parse_seed<M: HarnessModel>(m: &M, text: &str) -> Result<ProductPoint<M>, UsageError> {
    let f = fields(text, 2, "seed")?;
    Ok(ProductPoint::new(m.parse_point(f[0])?, m.parse_point(f[1])?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordStream {
    /// Prefixes of one word.
    Word(Vec<u8>),
    /// The powers `u¹, …, uᶜᵒᵘⁿᵗ`.
    Power(Vec<u8>, u32),
}

pub fn parse_stream<M: HarnessModel>(
    group: &GroupPresentation<M>,
    text: &str,
    rng: &mut ChaCha8Rng,
) -> Result<WordStream, UsageError> {
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| UsageError(format!("word stream {text:?} has no kind, expected e.g. word:ab")))?;
    let count = |s: &str| -> Result<usize, UsageError> {
        s.trim().parse().map_err(|_| UsageError(format!("{s:?} is not a nonnegative integer")))
    };
    match kind.trim() {
        "word" => Ok(WordStream::Word(group.parse_word(body.trim())?)),
        "random" => Ok(WordStream::Word(random_word(group, rng, count(body)?))),
        "power" => {
            let (w, n) =
                body.rsplit_once(':').ok_or_else(|| UsageError("power stream is power:<letters>:<count>".into()))?;
            let w = group.reduce(&group.parse_word(w.trim())?);
            if w.is_empty() {
                return Err(UsageError("power stream needs a nontrivial word".into()));
            }
            let n = u32::try_from(count(n)?).map_err(|_| UsageError("power count too large".into()))?;
            Ok(WordStream::Power(w, n))
        }
        other => Err(UsageError(format!("unknown word stream {other:?}, expected word, power or random"))),
    }
}

#[cfg(test)]
mod tests {
    use horobound::product::{classify, Case};
    use horobound::tree::CayleyTree;

    use super::*;
    use crate::sampling::rng_for;

    #[test]
    fn tree_descriptors() {
        let m = CayleyTree;
        let g = m.group();
        let seq = parse_sequence(&m, &g, "geodesic:e,(a);e,(A);0").unwrap();
        assert_eq!(classify(&m, &seq).unwrap().case, Case::II);
        let seq = parse_sequence(&m, &g, "rays:e;e,(a);2;e;e,(b);1").unwrap();
        assert_eq!(classify(&m, &seq).unwrap().case, Case::III);
        let seq = parse_sequence(&m, &g, "bounded:ab;e;e,(B)").unwrap();
        assert_eq!(classify(&m, &seq).unwrap().case, Case::I);
        assert!(parse_sequence(&m, &g, "orbit:a;e;b").is_ok());
        for bad in ["geodesic:e,(a);e,(A)", "spiral:1", "rays:e;e,(a);-1;e;e,(b);1", "orbit:x;e;e", "geodesic"] {
            assert!(parse_sequence(&m, &g, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn streams() {
        let m = CayleyTree;
        let g = m.group();
        let mut rng = rng_for(1, "t");
        assert_eq!(parse_stream(&g, "word:aB", &mut rng).unwrap(), WordStream::Word(vec![0, 3]));
        assert_eq!(parse_stream(&g, "power:aAb:3", &mut rng).unwrap(), WordStream::Power(vec![1], 3));
        match parse_stream(&g, "random:20", &mut rng).unwrap() {
            WordStream::Word(w) => assert_eq!(w.len(), 20),
            other => panic!("{other:?}"),
        }
        assert!(parse_stream(&g, "power:aA:3", &mut rng).is_err());
        assert!(parse_stream(&g, "random:x", &mut rng).is_err());
    }
}
