use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use crate::lang::Kind;

use super::compile::{Compiled, Op, Target};
use super::{Fault, FaultKind, MEMORY_BUDGET};

/// A string with its hash computed once, so hashing a configuration costs
/// time proportional to the number of values, not their length.
#[derive(Debug, Clone)]
pub(crate) struct Text {
    hash: u64,
    text: Rc<str>,
}

impl Text {
    pub fn new(text: Rc<str>) -> Self {
        let mut h = DefaultHasher::new();
        text.hash(&mut h);
        Text {
            hash: h.finish(),
            text,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl PartialEq for Text {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && (Rc::ptr_eq(&self.text, &other.text) || self.text == other.text)
    }
}

impl Eq for Text {}

impl Hash for Text {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Bool(bool),
    Str(Text),
}

impl Value {
    pub fn str(s: impl Into<Rc<str>>) -> Self {
        Value::Str(Text::new(s.into()))
    }
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Bool(_) => "boolean",
            Value::Str(_) => "string",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Frame {
    pub def: u32,
    pub pc: u32,
    pub args: Rc<[Value]>,
    pub result: Option<bool>,
    pub operands: Vec<Value>,
}

/// A suspended caller. Nodes are immutable and shared between the live
/// machine and every snapshot taken while they were on the stack, so a
/// snapshot costs one frame copy regardless of depth.
#[derive(Debug)]
struct Node {
    frame: Frame,
    below: Link,
    depth: usize,
    hash: u64,
}

type Link = Option<Rc<Node>>;

// Deep stacks would overflow the host stack with the derived recursive drop.
impl Drop for Node {
    fn drop(&mut self) {
        let mut next = self.below.take();
        while let Some(rc) = next {
            match Rc::try_unwrap(rc) {
                Ok(mut node) => next = node.below.take(),
                Err(_) => break,
            }
        }
    }
}

fn link_hash(link: &Link) -> u64 {
    link.as_ref().map_or(0, |n| n.hash)
}

fn link_depth(link: &Link) -> usize {
    link.as_ref().map_or(0, |n| n.depth)
}

fn link_eq(mut a: &Link, mut b: &Link) -> bool {
    loop {
        match (a, b) {
            (None, None) => return true,
            (Some(x), Some(y)) => {
                if Rc::ptr_eq(x, y) {
                    return true;
                }
                if x.hash != y.hash || x.depth != y.depth || x.frame != y.frame {
                    return false;
                }
                a = &x.below;
                b = &y.below;
            }
            _ => return false,
        }
    }
}

/// Full control and data state of a run: the call stack with every
/// frame's definition, cursor, bindings, pending result and operand stack.
/// Printed output is not part of it.
#[derive(Debug, Clone)]
pub struct Configuration {
    top: Frame,
    below: Link,
}

impl Configuration {
    /// Number of frames on the call stack.
    pub fn depth(&self) -> usize {
        1 + link_depth(&self.below)
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && link_eq(&self.below, &other.below)
    }
}

impl Eq for Configuration {}

impl Hash for Configuration {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        state.write_u64(link_hash(&self.below));
    }
}

pub(crate) enum Step {
    Continue,
    Halted(Option<bool>),
    Fault(Fault),
    /// The allocation budget would be exceeded.
    Exhausted,
}

pub(crate) struct Machine<'p> {
    program: &'p [Compiled],
    top: Frame,
    below: Link,
    pub output: String,
    /// Bytes of string data created so far. Never decreases, so it bounds
    /// live memory and depends only on the step count.
    allocated: usize,
}

fn fault(kind: FaultKind, detail: impl Into<String>) -> Step {
    Step::Fault(Fault {
        kind,
        detail: detail.into(),
    })
}

impl<'p> Machine<'p> {
    /// Sets up the entry frame, or reports why the entry cannot be called.
    pub fn start(
        program: &'p [Compiled],
        index: Option<usize>,
        name: &str,
        want: Kind,
        args: Vec<Value>,
    ) -> Result<Self, Fault> {
        let Some(index) = index else {
            return Err(Fault {
                kind: FaultKind::UndefinedName,
                detail: format!("`{name}` is not defined"),
            });
        };
        let def = &program[index];
        check_callable(def, want, args.len())?;
        Ok(Machine {
            program,
            top: Frame {
                def: index as u32,
                pc: 0,
                args: args.into(),
                result: None,
                operands: Vec::new(),
            },
            below: None,
            output: String::new(),
            allocated: 0,
        })
    }

    pub fn snapshot(&self) -> Configuration {
        Configuration {
            top: self.top.clone(),
            below: self.below.clone(),
        }
    }

    pub fn definition_name(&self) -> &str {
        &self.program[self.top.def as usize].name
    }

    pub fn cursor(&self) -> u32 {
        self.top.pc
    }

    pub fn depth(&self) -> usize {
        1 + link_depth(&self.below)
    }

    /// Hash of the current configuration; equal configurations agree.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.top.hash(&mut h);
        h.write_u64(link_hash(&self.below));
        h.finish()
    }

    pub fn bindings(&self) -> impl Iterator<Item = String> + '_ {
        self.top.args.iter().map(|v| match v {
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.as_str().to_string(),
        })
    }

    fn pop(&mut self) -> Value {
        self.top
            .operands
            .pop()
            .expect("compiled code keeps the operand stack balanced")
    }

    fn pop_str(&mut self, op: &str) -> Result<Text, Step> {
        match self.pop() {
            Value::Str(s) => Ok(s),
            other => Err(fault(
                FaultKind::Type,
                format!("{op} expects a string, got {}", other.kind()),
            )),
        }
    }

    fn pop_bool(&mut self, op: &str) -> Result<bool, Step> {
        match self.pop() {
            Value::Bool(b) => Ok(b),
            other => Err(fault(
                FaultKind::Type,
                format!("{op} expects a boolean, got {}", other.kind()),
            )),
        }
    }

    fn push(&mut self, v: Value) {
        self.top.operands.push(v);
    }

    fn charge(&mut self, bytes: usize) -> Result<(), Step> {
        self.allocated = self.allocated.saturating_add(bytes);
        if self.allocated > MEMORY_BUDGET {
            Err(Step::Exhausted)
        } else {
            Ok(())
        }
    }

    /// Executes one instruction.
    pub fn step(&mut self) -> Step {
        match self.try_step() {
            Ok(s) | Err(s) => s,
        }
    }

    fn try_step(&mut self) -> Result<Step, Step> {
        let program = self.program;
        let def = &program[self.top.def as usize];
        let code = def
            .code
            .as_ref()
            .expect("frames are only created for definitions with bodies");
        let op = code[self.top.pc as usize].clone();
        self.top.pc += 1;
        match op {
            Op::Bool(b) => self.push(Value::Bool(b)),
            Op::Str(s) => self.push(Value::Str(s)),
            Op::Param(i) => {
                let v = self.top.args[i as usize].clone();
                self.push(v);
            }
            Op::Not => {
                let b = self.pop_bool("not")?;
                self.push(Value::Bool(!b));
            }
            Op::Eq => {
                let rhs = self.pop();
                let lhs = self.pop();
                if lhs.kind() != rhs.kind() {
                    return Err(fault(
                        FaultKind::Type,
                        format!("cannot compare {} with {}", lhs.kind(), rhs.kind()),
                    ));
                }
                self.push(Value::Bool(lhs == rhs));
            }
            Op::Concat => {
                let b = self.pop_str("concat")?;
                let a = self.pop_str("concat")?;
                self.charge(a.as_str().len() + b.as_str().len())?;
                self.push(Value::str(format!("{}{}", a.as_str(), b.as_str())));
            }
            Op::Lookup => {
                let name = self.pop_str("lookup")?;
                match program.iter().find(|c| *c.name == *name.as_str()) {
                    Some(c) => {
                        let src = c.source.clone();
                        self.push(Value::Str(src));
                    }
                    None => {
                        return Err(fault(
                            FaultKind::LookupMiss,
                            format!("lookup of `{}` found no definition", name.as_str()),
                        ))
                    }
                }
            }
            Op::Length => {
                let s = self.pop_str("length")?;
                let n = s.as_str().chars().count().to_string();
                self.charge(n.len())?;
                self.push(Value::str(n));
            }
            Op::CharAt => {
                let index = self.pop_str("charat")?;
                let s = self.pop_str("charat")?;
                let Some(i) = parse_decimal(index.as_str()) else {
                    return Err(fault(
                        FaultKind::Type,
                        format!("charat index {:?} is not a decimal numeral", index.as_str()),
                    ));
                };
                let c = s
                    .as_str()
                    .chars()
                    .nth(i)
                    .map(String::from)
                    .unwrap_or_default();
                self.charge(c.len())?;
                self.push(Value::str(c));
            }
            Op::JumpUnless(target) => {
                if !self.pop_bool("if")? {
                    self.top.pc = target;
                }
            }
            Op::Jump(target) => self.top.pc = target,
            Op::Print => {
                let s = self.pop_str("print")?;
                self.charge(s.as_str().len())?;
                self.output.push_str(s.as_str());
            }
            Op::SetResult => {
                let b = self.pop_bool("result assignment")?;
                self.top.result = Some(b);
            }
            Op::Fault(kind, detail) => return Err(fault(kind, detail.to_string())),
            Op::Call {
                target,
                argc,
                want,
                tail,
            } => {
                let index = match target {
                    Target::Def(i) => i,
                    Target::Missing(name) => {
                        return Err(fault(
                            FaultKind::UndefinedName,
                            format!("`{name}` is not defined"),
                        ))
                    }
                };
                let callee = &program[index as usize];
                if let Err(f) = check_callable(callee, want, argc as usize) {
                    return Err(Step::Fault(f));
                }
                let split = self.top.operands.len() - argc as usize;
                let args: Rc<[Value]> = self.top.operands.drain(split..).collect();
                let frame = Frame {
                    def: index,
                    pc: 0,
                    args,
                    result: None,
                    operands: Vec::new(),
                };
                let caller = std::mem::replace(&mut self.top, frame);
                if !tail {
                    self.suspend(caller);
                }
            }
            Op::Return => {
                let value = if def.kind == Kind::Function {
                    match self.top.result {
                        Some(b) => Some(b),
                        None => {
                            return Err(fault(
                                FaultKind::NoResultAssigned,
                                format!("`{}` returned without assigning a result", def.name),
                            ))
                        }
                    }
                } else {
                    None
                };
                let Some(node) = self.below.take() else {
                    return Ok(Step::Halted(value));
                };
                self.top = node.frame.clone();
                self.below = node.below.clone();
                if let Some(b) = value {
                    self.push(Value::Bool(b));
                }
            }
        }
        Ok(Step::Continue)
    }

    fn suspend(&mut self, frame: Frame) {
        let below = self.below.take();
        let mut h = DefaultHasher::new();
        frame.hash(&mut h);
        h.write_u64(link_hash(&below));
        self.below = Some(Rc::new(Node {
            depth: 1 + link_depth(&below),
            hash: h.finish(),
            frame,
            below,
        }));
    }
}

fn check_callable(def: &Compiled, want: Kind, argc: usize) -> Result<(), Fault> {
    if def.kind != want {
        let what = match want {
            Kind::Procedure => "a procedure",
            Kind::Function => "a function",
        };
        return Err(Fault {
            kind: FaultKind::Type,
            detail: format!("`{}` is not {what}", def.name),
        });
    }
    if def.arity != argc {
        return Err(Fault {
            kind: FaultKind::Arity,
            detail: format!(
                "`{}` expects {} argument(s), got {argc}",
                def.name, def.arity
            ),
        });
    }
    if def.code.is_none() {
        return Err(Fault {
            kind: FaultKind::MissingBody,
            detail: format!("`{}` is declared but has no body", def.name),
        });
    }
    Ok(())
}

fn parse_decimal(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // Indices past usize::MAX are past the end of any string.
    Some(s.parse().unwrap_or(usize::MAX))
}
