use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::name::Name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A type name that is not in the classification or schema at hand.
    UnknownType(Name),
    /// An incidence pair that references a name outside the carriers.
    DanglingIncidence { ty: Name, instance: Name },
    /// A finite map that is not a total function between its stated carriers.
    PartialMap {
        map: String,
        /// Domain names with no image.
        missing: Vec<Name>,
        /// Mapped names outside the domain.
        stray: Vec<Name>,
        /// Names whose image falls outside the codomain.
        outside: Vec<Name>,
    },
    /// An infomorphism argument that fails the fundamental condition.
    InvalidInfomorphism { violations: usize },
    /// A tuple that does not classify against the signature it was paired with.
    IllTypedTuple(String),
    /// Tuple enumeration would exceed the configured cap.
    TooManyTuples { count: u128, cap: u128 },
    /// Two morphisms whose shared endpoint does not agree.
    EndpointMismatch(String),
    /// The classifications of a structure disagree with its schema/universe.
    CarrierMismatch(Vec<String>),
    /// A morphism endpoint that is not a valid structure.
    InvalidEndpoint(String),
    InvalidStructure(String),
    InvalidMorphism(String),
    InvalidInput(String),
    /// Olog export needs entity types and sorts to coincide.
    NotUnifiedModel {
        sorts_not_types: Vec<Name>,
        types_not_sorts: Vec<Name>,
    },
    /// `(sort, value)` pairs whose value is not a key of the same-named type.
    ReferentialViolation(Vec<(Name, Name)>),
    InconsistentQuads(String),
}

fn write_names(f: &mut fmt::Formatter<'_>, names: &[Name]) -> fmt::Result {
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{n}")?;
    }
    Ok(())
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownType(t) => write!(f, "unknown type `{t}`"),
            Error::DanglingIncidence { ty, instance } => {
                write!(f, "incidence pair ({ty}, {instance}) references a name outside the carriers")
            }
            Error::PartialMap {
                map,
                missing,
                stray,
                outside,
            } => {
                write!(f, "map `{map}` is not a total function")?;
                if !missing.is_empty() {
                    f.write_str("; undefined at: ")?;
                    write_names(f, missing)?;
                }
                if !stray.is_empty() {
                    f.write_str("; defined outside its domain at: ")?;
                    write_names(f, stray)?;
                }
                if !outside.is_empty() {
                    f.write_str("; image outside its codomain at: ")?;
                    write_names(f, outside)?;
                }
                Ok(())
            }
            Error::InvalidInfomorphism { violations } => {
                write!(f, "not an infomorphism ({violations} violating pairs)")
            }
            Error::IllTypedTuple(why) => write!(f, "ill-typed tuple: {why}"),
            Error::TooManyTuples { count, cap } => {
                write!(f, "tuple enumeration of {count} tuples exceeds the cap of {cap}")
            }
            Error::EndpointMismatch(why) => write!(f, "endpoint mismatch: {why}"),
            Error::CarrierMismatch(problems) => {
                f.write_str("carrier mismatch: ")?;
                for (i, p) in problems.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    f.write_str(p)?;
                }
                Ok(())
            }
            Error::InvalidEndpoint(why) => write!(f, "invalid endpoint: {why}"),
            Error::InvalidStructure(why) => write!(f, "invalid structure: {why}"),
            Error::InvalidMorphism(why) => write!(f, "invalid morphism: {why}"),
            Error::InvalidInput(why) => write!(f, "invalid input: {why}"),
            Error::NotUnifiedModel {
                sorts_not_types,
                types_not_sorts,
            } => {
                f.write_str("not a unified model")?;
                if !sorts_not_types.is_empty() {
                    f.write_str("; sorts that are not entity types: ")?;
                    write_names(f, sorts_not_types)?;
                }
                if !types_not_sorts.is_empty() {
                    f.write_str("; entity types that are not sorts: ")?;
                    write_names(f, types_not_sorts)?;
                }
                Ok(())
            }
            Error::ReferentialViolation(pairs) => {
                f.write_str("referential integrity violated at")?;
                for (t, y) in pairs {
                    write!(f, " ({t}, {y})")?;
                }
                Ok(())
            }
            Error::InconsistentQuads(why) => write!(f, "inconsistent quads: {why}"),
        }
    }
}

impl core::error::Error for Error {}
