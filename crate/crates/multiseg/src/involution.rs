use crate::{Multisegment, Segment};

/// The combinatorial Zelevinsky involution `m ↦ m^#`.
pub fn involution(m: &Multisegment) -> Multisegment {
    let mut cur = m.segments().to_vec();
    let mut out = Vec::new();
    while !cur.is_empty() {
        // `cur` is kept in canonical order, which is `≥_e`
        let mut chain = vec![0usize];
        loop {
            let last = cur[*chain.last().unwrap()];
            let next = (0..cur.len()).find(|&i| cur[i].precedes(&last) && cur[i].end() == last.end() - 1);
            match next {
                Some(i) => chain.push(i),
                None => break,
            }
        }
        let tail = cur[*chain.last().unwrap()];
        out.push(Segment::new(tail.end(), cur[0].end()).expect("chain ends decrease"));
        let mut next = Vec::with_capacity(cur.len());
        for (i, s) in cur.iter().enumerate() {
            if chain.contains(&i) {
                next.extend(s.drop_end());
            } else {
                next.push(*s);
            }
        }
        next.sort_by(Segment::canonical_cmp);
        cur = next;
    }
    Multisegment::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(involution(&Multisegment::empty()), Multisegment::empty());
        assert_eq!(involution(&m("[2,5]")), m("[2]+[3]+[4]+[5]"));
        assert_eq!(involution(&m("[2]+[3]+[4]+[5]")), m("[2,5]"));
        let x = m("[4,5]+[2,4]+[3]+[1,2]");
        assert_eq!(involution(&x), x);
        assert_eq!(involution(&m("[1]+[1]")), m("[1]+[1]"));
    }
}
