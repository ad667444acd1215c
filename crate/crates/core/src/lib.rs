pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod symexpr;
pub mod syntax;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/scripting.md")]
    mod scripting {}
}
