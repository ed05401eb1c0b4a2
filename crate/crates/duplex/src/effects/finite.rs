//! Small, fully enumerable effects used to check effect laws exhaustively.

use super::{Effect, MonadEffect};
use std::fmt;

/// No effect at all: `Of<T> = T`.
pub struct IdentityEffect;

impl Effect for IdentityEffect {
    type Of<T: 'static> = T;

    fn map<T: 'static, U: 'static>(ft: T, f: impl FnOnce(T) -> U + 'static) -> U {
        f(ft)
    }
}

impl MonadEffect for IdentityEffect {
    fn pure<T: 'static>(t: T) -> T {
        t
    }

    fn bind<T: 'static, U: 'static>(ft: T, f: impl FnOnce(T) -> U + 'static) -> U {
        f(ft)
    }
}

/// Possible absence: `Of<T> = Option<T>`.
pub struct OptionEffect;

impl Effect for OptionEffect {
    type Of<T: 'static> = Option<T>;

    fn map<T: 'static, U: 'static>(ft: Option<T>, f: impl FnOnce(T) -> U + 'static) -> Option<U> {
        ft.map(f)
    }
}

impl MonadEffect for OptionEffect {
    fn pure<T: 'static>(t: T) -> Option<T> {
        Some(t)
    }

    fn bind<T: 'static, U: 'static>(
        ft: Option<T>,
        f: impl FnOnce(T) -> Option<U> + 'static,
    ) -> Option<U> {
        ft.and_then(f)
    }
}

/// A log monoid small enough to enumerate: words over `{0, 1}` of length at
/// most [`Trace::MAX_LEN`]. Appending concatenates and keeps the earliest
/// symbols, which preserves associativity — dropped symbols are exactly
/// those beyond the cap no matter how the concatenation is bracketed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trace(Vec<u8>);

impl Trace {
    pub const MAX_LEN: usize = 2;
    pub const ALPHABET: usize = 2;

    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn symbol(s: u8) -> Self {
        assert!((s as usize) < Self::ALPHABET, "symbol out of alphabet");
        Trace(vec![s])
    }

    pub fn append(&self, other: &Trace) -> Trace {
        let mut word = self.0.clone();
        word.extend_from_slice(&other.0);
        word.truncate(Self::MAX_LEN);
        Trace(word)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// Every trace, shortest first, lexicographic within a length.
    pub fn all() -> Vec<Trace> {
        let mut out = vec![Trace::empty()];
        let mut frontier = vec![Trace::empty()];
        for _ in 0..Self::MAX_LEN {
            let mut next = Vec::new();
            for t in &frontier {
                for s in 0..Self::ALPHABET as u8 {
                    let mut word = t.0.clone();
                    word.push(s);
                    next.push(Trace(word));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trace({self})")
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        }
    }
}

/// Accumulate a [`Trace`] alongside the value: `Of<T> = (Trace, T)`.
pub struct WriterEffect;

impl Effect for WriterEffect {
    type Of<T: 'static> = (Trace, T);

    fn map<T: 'static, U: 'static>(
        (w, t): (Trace, T),
        f: impl FnOnce(T) -> U + 'static,
    ) -> (Trace, U) {
        (w, f(t))
    }
}

impl MonadEffect for WriterEffect {
    fn pure<T: 'static>(t: T) -> (Trace, T) {
        (Trace::empty(), t)
    }

    fn bind<T: 'static, U: 'static>(
        (w1, t): (Trace, T),
        f: impl FnOnce(T) -> (Trace, U) + 'static,
    ) -> (Trace, U) {
        let (w2, u) = f(t);
        (w1.append(&w2), u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_universe_has_the_expected_size() {
        // 1 empty + 2 singletons + 4 pairs
        let all = Trace::all();
        assert_eq!(all.len(), 7);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 7);
    }

    #[test]
    fn trace_is_a_monoid() {
        let all = Trace::all();
        for a in &all {
            assert_eq!(&Trace::empty().append(a), a);
            assert_eq!(&a.append(&Trace::empty()), a);
            for b in &all {
                for c in &all {
                    assert_eq!(a.append(b).append(c), a.append(&b.append(c)));
                }
            }
        }
    }

    #[test]
    fn append_keeps_earliest_symbols() {
        let t = Trace::symbol(0).append(&Trace::symbol(1)).append(&Trace::symbol(1));
        assert_eq!(t.symbols(), &[0, 1]);
    }

    #[test]
    fn writer_bind_appends_in_order() {
        let (w, v) = WriterEffect::bind((Trace::symbol(1), 3), |x| (Trace::symbol(0), x + 1));
        assert_eq!(w.symbols(), &[1, 0]);
        assert_eq!(v, 4);
    }

    #[test]
    fn writer_monad_laws_on_traces() {
        // left unit, right unit, associativity — checked over every trace
        // and a couple of functions, since the value type is irrelevant
        let all = Trace::all();
        for w in &all {
            let m = (w.clone(), 1i64);
            let f = |x: i64| (Trace::symbol(0), x + 1);
            let g = |x: i64| (Trace::symbol(1), x * 2);

            let left = WriterEffect::bind(WriterEffect::pure(1i64), f);
            assert_eq!(left, f(1));

            let right = WriterEffect::bind(m.clone(), WriterEffect::pure);
            assert_eq!(right, m);

            let assoc_l = WriterEffect::bind(WriterEffect::bind(m.clone(), f), g);
            let assoc_r = WriterEffect::bind(m.clone(), move |x| WriterEffect::bind(f(x), g));
            assert_eq!(assoc_l, assoc_r);
        }
    }

    #[test]
    fn identity_and_option_behave() {
        assert_eq!(IdentityEffect::map(4, |x| x + 1), 5);
        assert_eq!(IdentityEffect::bind(4, |x| x * 2), 8);
        assert_eq!(OptionEffect::map(Some(4), |x| x + 1), Some(5));
        assert_eq!(OptionEffect::map(None::<i64>, |x| x + 1), None);
        assert_eq!(OptionEffect::bind(Some(4), |_| None::<i64>), None);
    }
}
