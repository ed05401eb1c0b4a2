//! Deferred side effects, with and without failure.

use super::{Effect, MonadEffect};
use std::marker::PhantomData;

/// A suspended computation. Nothing happens until [`Io::run`].
pub struct Io<T>(Box<dyn FnOnce() -> T>);

impl<T: 'static> Io<T> {
    pub fn new(f: impl FnOnce() -> T + 'static) -> Self {
        Io(Box::new(f))
    }

    pub fn run(self) -> T {
        (self.0)()
    }
}

/// Plain deferred effects.
pub struct IoEffect;

impl Effect for IoEffect {
    type Of<T: 'static> = Io<T>;

    fn map<T: 'static, U: 'static>(ft: Io<T>, f: impl FnOnce(T) -> U + 'static) -> Io<U> {
        Io::new(move || f(ft.run()))
    }
}

impl MonadEffect for IoEffect {
    fn pure<T: 'static>(t: T) -> Io<T> {
        Io::new(move || t)
    }

    fn bind<T: 'static, U: 'static>(ft: Io<T>, f: impl FnOnce(T) -> Io<U> + 'static) -> Io<U> {
        Io::new(move || f(ft.run()).run())
    }
}

/// Deferred effects that can fail with an `E`. `bind` stops at the first
/// failure, so a pipeline's later stages never run once something breaks.
pub struct FallibleIo<E>(PhantomData<E>);

impl<E: 'static> Effect for FallibleIo<E> {
    type Of<T: 'static> = Io<Result<T, E>>;

    fn map<T: 'static, U: 'static>(
        ft: Io<Result<T, E>>,
        f: impl FnOnce(T) -> U + 'static,
    ) -> Io<Result<U, E>> {
        Io::new(move || ft.run().map(f))
    }
}

impl<E: 'static> MonadEffect for FallibleIo<E> {
    fn pure<T: 'static>(t: T) -> Io<Result<T, E>> {
        Io::new(move || Ok(t))
    }

    fn bind<T: 'static, U: 'static>(
        ft: Io<Result<T, E>>,
        f: impl FnOnce(T) -> Io<Result<U, E>> + 'static,
    ) -> Io<Result<U, E>> {
        Io::new(move || match ft.run() {
            Ok(t) => f(t).run(),
            Err(e) => Err(e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;
    use std::rc::Rc;

    #[test]
    fn io_is_deferred() {
        let fired = Rc::new(Cell::new(false));
        let flag = Rc::clone(&fired);
        let io = Io::new(move || {
            flag.set(true);
            5
        });
        let mapped = IoEffect::map(io, |x| x + 1);
        assert!(!fired.get(), "building the pipeline must not run it");
        assert_eq!(mapped.run(), 6);
        assert!(fired.get());
    }

    #[test]
    fn fallible_bind_short_circuits() {
        let second_ran = Rc::new(Cell::new(false));
        let flag = Rc::clone(&second_ran);
        let failing: Io<Result<i64, String>> = Io::new(|| Err("boom".to_string()));
        let chained = FallibleIo::<String>::bind(failing, move |x| {
            flag.set(true);
            Io::new(move || Ok(x + 1))
        });
        assert_eq!(chained.run(), Err("boom".to_string()));
        assert!(!second_ran.get(), "later stages must not run after failure");
    }

    #[test]
    fn fallible_pure_and_map() {
        let io = FallibleIo::<String>::pure(4);
        let mapped = FallibleIo::<String>::map(io, |x| x * 10);
        assert_eq!(mapped.run(), Ok(40));
    }
}
