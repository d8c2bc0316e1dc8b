pub mod build;
pub mod check;
pub mod correspond;
pub mod dualize;
pub mod examples;
pub mod omega;
pub mod validate;

use clap::ValueEnum;
use subord::algebra::Elem;
use subord::subordination::Colour;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColourArg {
    White,
    Black,
    Bi,
}

impl From<ColourArg> for Colour {
    fn from(c: ColourArg) -> Colour {
        match c {
            ColourArg::White => Colour::White,
            ColourArg::Black => Colour::Black,
            ColourArg::Bi => Colour::Bi,
        }
    }
}

pub fn list(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn table(values: impl IntoIterator<Item = Elem>) -> String {
    format!("[{}]", list(values))
}
