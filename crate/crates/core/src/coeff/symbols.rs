use std::collections::BTreeMap;

use super::Scalar;
use crate::error::{Error, Result};

/// A 1-form with field coefficients, keyed by generator index.
pub type CoeffOneForm = BTreeMap<usize, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    /// A constant of the model (zero differential), e.g. `c`.
    Parameter,
    /// A function on the manifold; its differential must be declared to be used.
    Function,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
}

/// Declared symbols of the coefficient field and the differentials of the
/// function symbols. The position of a symbol is its variable index in
/// [`Scalar`] polynomials, so declaration order also fixes the monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<Symbol>,
    differentials: BTreeMap<usize, CoeffOneForm>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<usize> {
        if self.index_of(name).is_some() {
            return Err(Error::DuplicateDeclaration(name.to_string()));
        }
        self.symbols.push(Symbol { name: name.to_string(), kind });
        Ok(self.symbols.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.symbols[index].name
    }

    pub fn kind(&self, index: usize) -> Option<SymbolKind> {
        self.symbols.get(index).map(|s| s.kind)
    }

    /// Declares `d(symbol) = form`. Only function symbols carry differentials,
    /// and every symbol occurring in the coefficients must already be declared.
    pub fn set_differential(&mut self, index: usize, form: CoeffOneForm) -> Result<()> {
        match self.kind(index) {
            None => return Err(Error::UndeclaredSymbol(format!("#{index}"))),
            Some(SymbolKind::Parameter) => {
                return Err(Error::Invalid(format!(
                    "parameter `{}` has zero differential and cannot be assigned one",
                    self.name(index)
                )))
            }
            Some(SymbolKind::Function) => {}
        }
        if self.differentials.contains_key(&index) {
            return Err(Error::DuplicateDeclaration(format!("diff {}", self.name(index))));
        }
        for coeff in form.values() {
            self.check_declared(coeff)?;
        }
        let form = form.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.differentials.insert(index, form);
        Ok(())
    }

    pub fn differential(&self, index: usize) -> Option<&CoeffOneForm> {
        self.differentials.get(&index)
    }

    pub fn check_declared(&self, s: &Scalar) -> Result<()> {
        match s.variables().into_iter().find(|&v| v >= self.symbols.len()) {
            Some(v) => Err(Error::UndeclaredSymbol(format!("#{v}"))),
            None => Ok(()),
        }
    }

    /// Exterior derivative of a coefficient: `Σ ∂a/∂s · ds` over the symbols
    /// occurring in `a`. Parameters contribute nothing; a function symbol
    /// without a declared differential is an error rather than a silent zero.
    pub fn scalar_diff(&self, a: &Scalar) -> Result<CoeffOneForm> {
        let mut out = CoeffOneForm::new();
        for var in a.variables() {
            match self.kind(var) {
                None => return Err(Error::UndeclaredSymbol(format!("#{var}"))),
                Some(SymbolKind::Parameter) => {}
                Some(SymbolKind::Function) => {
                    let ds = self
                        .differentials
                        .get(&var)
                        .ok_or_else(|| Error::UndeclaredSymbol(format!("d({})", self.name(var))))?;
                    let partial = a.partial(var);
                    if partial.is_zero() {
                        continue;
                    }
                    for (&gen, coeff) in ds {
                        let term = &partial * coeff;
                        let slot = out.entry(gen).or_insert_with(Scalar::zero);
                        *slot = &*slot + &term;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// True when some function symbol occurs in `a`.
    pub fn involves_function(&self, a: &Scalar) -> bool {
        a.variables().into_iter().any(|v| self.kind(v) == Some(SymbolKind::Function))
    }
}
