use core::fmt;

use super::ast::{Multiplicity, Polarity, Type, View};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Top,
    ArrowLhs,
    SemiLhs,
    SemiRhs,
}

fn write_type(f: &mut fmt::Formatter<'_>, t: &Type, ctx: Ctx) -> fmt::Result {
    match t {
        Type::Basic(b) => write!(f, "{b}"),
        Type::Data(name) | Type::Var(name) => f.write_str(name),
        Type::Skip => f.write_str("Skip"),
        Type::Message(p, b) => {
            let sigil = match p {
                Polarity::Out => '!',
                Polarity::In => '?',
            };
            write!(f, "{sigil}{b}")
        }
        Type::Pair(a, b) => {
            f.write_str("(")?;
            write_type(f, a, Ctx::Top)?;
            f.write_str(", ")?;
            write_type(f, b, Ctx::Top)?;
            f.write_str(")")
        }
        Type::Choice(view, branches) => {
            f.write_str(match view {
                View::Internal => "+{",
                View::External => "&{",
            })?;
            for (i, (label, s)) in branches.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{label}: ")?;
                write_type(f, s, Ctx::Top)?;
            }
            f.write_str("}")
        }
        Type::Arrow(m, a, b) => {
            let paren = ctx != Ctx::Top;
            if paren {
                f.write_str("(")?;
            }
            write_type(f, a, Ctx::ArrowLhs)?;
            f.write_str(match m {
                Multiplicity::Unrestricted => " -> ",
                Multiplicity::Linear => " -o ",
            })?;
            write_type(f, b, Ctx::Top)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Type::Semi(a, b) => {
            let paren = ctx == Ctx::SemiLhs;
            if paren {
                f.write_str("(")?;
            }
            write_type(f, a, Ctx::SemiLhs)?;
            f.write_str(";")?;
            write_type(f, b, Ctx::SemiRhs)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        Type::Rec(x, body) => {
            let paren = ctx == Ctx::SemiLhs;
            if paren {
                f.write_str("(")?;
            }
            write!(f, "rec {x}. ")?;
            write_type(f, body, Ctx::SemiRhs)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

/// Prints types in the concrete syntax accepted by the parser.
impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, Ctx::Top)
    }
}
