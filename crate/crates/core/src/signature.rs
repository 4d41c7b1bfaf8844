//! Method-signature parsing for the supported analyzer dialects and
//! rendering back out of the canonical form.
//!
//! Three grammars are recognized: the bracketed `<pkg.Cls: ret m(t1,t2)>`
//! form (Soot and Doop dumps), the slash-and-descriptor `pkg/Cls.m(Desc)Ret`
//! form (WALA dumps), and the canonical `pkg.Cls.m(t1,t2)` form. Return
//! types are discarded; JVM descriptors are converted to source-type names;
//! generic type arguments are erased; varargs become arrays. Labels that are
//! plain dotted names with no parameter list (framework placeholder nodes
//! such as `dummy.InvokeDynamic`) parse as zero-argument methods in every
//! dialect so that downstream comparison still sees them.

use thiserror::Error;

use crate::model::{MethodRef, SignatureFlavor};
use crate::normalize::strip_artifacts;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("unparseable {flavor} signature {label:?}: {reason}")]
    Unparseable { label: String, flavor: SignatureFlavor, reason: String },
}

impl SignatureError {
    fn new(label: &str, flavor: SignatureFlavor, reason: impl Into<String>) -> Self {
        SignatureError::Unparseable {
            label: label.to_string(),
            flavor,
            reason: reason.into(),
        }
    }
}

/// Parses one artifact-stripped label into a [`MethodRef`] according to the
/// given dialect. Deterministic per flavor; fails with
/// [`SignatureError::Unparseable`] on labels outside the dialect's grammar.
pub fn canonicalize_signature(
    label: &str,
    flavor: SignatureFlavor,
) -> Result<MethodRef, SignatureError> {
    let trimmed = label.trim();
    if trimmed.is_empty() {
        return Err(SignatureError::new(label, flavor, "empty label"));
    }
    let parsed = match flavor {
        SignatureFlavor::Soot | SignatureFlavor::Doop => parse_bracketed(trimmed, flavor),
        SignatureFlavor::Wala => parse_wala(trimmed, flavor),
        SignatureFlavor::Canonical => parse_canonical(trimmed, flavor),
    };
    match parsed {
        Ok(m) => Ok(m),
        // Placeholder nodes (`dummy.InvokeDynamic`) are bare dotted names in
        // any dialect; accept them as parameterless methods.
        Err(err) => parse_bare(trimmed).ok_or(err),
    }
}

/// Renders a canonical method back into the given dialect. Bracketed
/// dialects get a `void` return type and WALA a `V` return descriptor; both
/// are discarded again on re-parse.
pub fn render_signature(m: &MethodRef, flavor: SignatureFlavor) -> String {
    match flavor {
        SignatureFlavor::Canonical => m.to_string(),
        SignatureFlavor::Soot | SignatureFlavor::Doop => format!(
            "<{}: void {}({})>",
            m.qualified_class(),
            m.method,
            m.params.join(",")
        ),
        SignatureFlavor::Wala => {
            let class_part = if m.package.is_empty() {
                m.class.clone()
            } else {
                format!("{}/{}", m.package.replace('.', "/"), m.class)
            };
            let descs: String = m.params.iter().map(|p| source_to_descriptor(p)).collect();
            format!("{}.{}({})V", class_part, m.method, descs)
        }
    }
}

fn build(
    label: &str,
    flavor: SignatureFlavor,
    package: &str,
    class: &str,
    method: &str,
    params: Vec<String>,
) -> Result<MethodRef, SignatureError> {
    // Hash suffixes can survive label-terminal stripping when they sit inside
    // a bracketed or descriptor form; scrub the method name as well.
    let method = strip_artifacts(method);
    MethodRef::new(erase_generics(package), erase_generics(class), method, params)
        .map_err(|e| SignatureError::new(label, flavor, e.to_string()))
}

/// `<pkg.Cls: ret m(t1,t2)>`
fn parse_bracketed(label: &str, flavor: SignatureFlavor) -> Result<MethodRef, SignatureError> {
    let inner = label
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| SignatureError::new(label, flavor, "expected <...> wrapper"))?;
    let (class_fqn, rest) = inner
        .split_once(':')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing ':' after class name"))?;
    let rest = rest.trim_start();
    let (_, name_and_params) = rest
        .split_once(' ')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing return type"))?;
    let (method, params) = split_name_params(name_and_params.trim(), label, flavor)?;
    let (package, class) = split_dotted_class(class_fqn.trim());
    build(label, flavor, package, class, method, params)
}

/// `pkg/Cls.m(Desc)Ret`
fn parse_wala(label: &str, flavor: SignatureFlavor) -> Result<MethodRef, SignatureError> {
    let open = label
        .find('(')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing '('"))?;
    let close = label[open..]
        .find(')')
        .map(|i| open + i)
        .ok_or_else(|| SignatureError::new(label, flavor, "missing ')'"))?;
    let head = &label[..open];
    let (class_part, method) = head
        .rsplit_once('.')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing '.' before method name"))?;
    if method.is_empty() {
        return Err(SignatureError::new(label, flavor, "empty method name"));
    }
    let params = parse_descriptor_list(&label[open + 1..close])
        .map_err(|reason| SignatureError::new(label, flavor, reason))?;
    let (package, class) = match class_part.rsplit_once('/') {
        Some((pkg, cls)) => (pkg.replace('/', "."), cls.to_string()),
        None => (String::new(), class_part.to_string()),
    };
    build(label, flavor, &package, &class, method, params)
}

/// `pkg.Cls.m(t1,t2)`
fn parse_canonical(label: &str, flavor: SignatureFlavor) -> Result<MethodRef, SignatureError> {
    let open = label
        .find('(')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing '('"))?;
    if !label.ends_with(')') {
        return Err(SignatureError::new(label, flavor, "missing closing ')'"));
    }
    let head = &label[..open];
    let (class_fqn, method) = head
        .rsplit_once('.')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing '.' before method name"))?;
    if method.is_empty() {
        return Err(SignatureError::new(label, flavor, "empty method name"));
    }
    let params = split_source_params(&label[open + 1..label.len() - 1])
        .map_err(|reason| SignatureError::new(label, flavor, reason))?;
    let (package, class) = split_dotted_class(class_fqn);
    build(label, flavor, package, class, method, params)
}

/// Plain dotted name with at least two segments and no signature syntax.
fn parse_bare(label: &str) -> Option<MethodRef> {
    if label.contains(|c: char| c.is_whitespace() || "()<>[]{};:,".contains(c)) {
        return None;
    }
    let (prefix, method) = label.rsplit_once('.')?;
    let (package, class) = split_dotted_class(prefix);
    if class.is_empty() || method.is_empty() {
        return None;
    }
    MethodRef::new(package, class, strip_artifacts(method), vec![]).ok()
}

/// Splits `name(params)` keeping `<init>`-style names intact.
fn split_name_params<'a>(
    s: &'a str,
    label: &str,
    flavor: SignatureFlavor,
) -> Result<(&'a str, Vec<String>), SignatureError> {
    let open = s
        .find('(')
        .ok_or_else(|| SignatureError::new(label, flavor, "missing '('"))?;
    if !s.ends_with(')') {
        return Err(SignatureError::new(label, flavor, "missing closing ')'"));
    }
    let name = &s[..open];
    if name.is_empty() {
        return Err(SignatureError::new(label, flavor, "empty method name"));
    }
    let params = split_source_params(&s[open + 1..s.len() - 1])
        .map_err(|reason| SignatureError::new(label, flavor, reason))?;
    Ok((name, params))
}

fn split_dotted_class(fqn: &str) -> (&str, &str) {
    match fqn.rsplit_once('.') {
        Some((pkg, cls)) => (pkg, cls),
        None => ("", fqn),
    }
}

/// Splits a comma-separated source-type list after erasing generics, then
/// normalizes each entry (trim, varargs to array).
fn split_source_params(raw: &str) -> Result<Vec<String>, String> {
    let erased = erase_generics(raw);
    let body = erased.trim();
    if body.is_empty() {
        return Ok(vec![]);
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err("empty parameter type".to_string());
            }
            if tok.contains(|c: char| c.is_whitespace() || "(){};/".contains(c)) {
                return Err(format!("malformed parameter type {tok:?}"));
            }
            Ok(match tok.strip_suffix("...") {
                Some(base) => format!("{base}[]"),
                None => tok.to_string(),
            })
        })
        .collect()
}

/// Removes balanced `<...>` generic-argument groups, keeping depth-0 text.
pub(crate) fn erase_generics(s: &str) -> String {
    if !s.contains('<') {
        return s.to_string();
    }
    // `<init>`/`<clinit>` are names, not generics; only erase groups that
    // follow a type-name character.
    let mut out = String::with_capacity(s.len());
    let mut depth = 0usize;
    let mut prev_is_type_char = false;
    for c in s.chars() {
        match c {
            '<' if prev_is_type_char || depth > 0 => depth += 1,
            '>' if depth > 0 => depth -= 1,
            _ if depth > 0 => {}
            _ => {
                prev_is_type_char = c.is_alphanumeric() || c == '_' || c == '$' || c == ']';
                out.push(c);
            }
        }
    }
    out
}

fn parse_descriptor_list(desc: &str) -> Result<Vec<String>, String> {
    let mut params = Vec::new();
    let bytes = desc.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let (ty, next) = parse_descriptor(desc, i)?;
        params.push(ty);
        i = next;
    }
    Ok(params)
}

fn parse_descriptor(desc: &str, start: usize) -> Result<(String, usize), String> {
    let bytes = desc.as_bytes();
    match bytes[start] {
        b'B' => Ok(("byte".into(), start + 1)),
        b'C' => Ok(("char".into(), start + 1)),
        b'D' => Ok(("double".into(), start + 1)),
        b'F' => Ok(("float".into(), start + 1)),
        b'I' => Ok(("int".into(), start + 1)),
        b'J' => Ok(("long".into(), start + 1)),
        b'S' => Ok(("short".into(), start + 1)),
        b'Z' => Ok(("boolean".into(), start + 1)),
        b'L' => {
            let semi = desc[start..]
                .find(';')
                .map(|i| start + i)
                .ok_or_else(|| format!("unterminated object descriptor in {desc:?}"))?;
            let name = &desc[start + 1..semi];
            if name.is_empty() {
                return Err(format!("empty object descriptor in {desc:?}"));
            }
            Ok((name.replace('/', "."), semi + 1))
        }
        b'[' => {
            let (inner, next) = parse_descriptor(desc, start + 1)?;
            Ok((format!("{inner}[]"), next))
        }
        other => Err(format!("invalid descriptor byte {:?} in {desc:?}", other as char)),
    }
}

fn source_to_descriptor(ty: &str) -> String {
    if let Some(base) = ty.strip_suffix("[]") {
        return format!("[{}", source_to_descriptor(base));
    }
    match ty {
        "byte" => "B".into(),
        "char" => "C".into(),
        "double" => "D".into(),
        "float" => "F".into(),
        "int" => "I".into(),
        "long" => "J".into(),
        "short" => "S".into(),
        "boolean" => "Z".into(),
        "void" => "V".into(),
        obj => format!("L{};", obj.replace('.', "/")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mref(pkg: &str, cls: &str, m: &str, params: &[&str]) -> MethodRef {
        MethodRef::new(pkg, cls, m, params.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn soot_style_discards_return_type() {
        let m = canonicalize_signature("<example.Demo: void doSomething()>", SignatureFlavor::Soot)
            .unwrap();
        assert_eq!(m, mref("example", "Demo", "doSomething", &[]));
    }

    #[test]
    fn wala_style_converts_descriptors() {
        let m = canonicalize_signature("example/Demo.lambda$main$0(I)V", SignatureFlavor::Wala)
            .unwrap();
        assert_eq!(m, mref("example", "Demo", "lambda$main$0", &["int"]));
    }

    #[test]
    fn canonical_rejects_unclosed_params() {
        let err = canonicalize_signature("Demo.f(", SignatureFlavor::Canonical).unwrap_err();
        assert!(matches!(err, SignatureError::Unparseable { .. }));
    }

    #[test]
    fn bracketed_keeps_init_and_clinit_names() {
        let m = canonicalize_signature("<p.C: void <init>(int)>", SignatureFlavor::Soot).unwrap();
        assert_eq!(m, mref("p", "C", "<init>", &["int"]));
        let m = canonicalize_signature("p/C.<clinit>()V", SignatureFlavor::Wala).unwrap();
        assert_eq!(m, mref("p", "C", "<clinit>", &[]));
        let m = canonicalize_signature("p.C.<init>()", SignatureFlavor::Canonical).unwrap();
        assert_eq!(m, mref("p", "C", "<init>", &[]));
    }

    #[test]
    fn wala_nested_arrays_and_objects() {
        let m = canonicalize_signature(
            "a/b/Cls$Inner.run([[ILjava/lang/String;J)Ljava/lang/Object;",
            SignatureFlavor::Wala,
        )
        .unwrap();
        assert_eq!(m, mref("a.b", "Cls$Inner", "run", &["int[][]", "java.lang.String", "long"]));
    }

    #[test]
    fn default_package_has_no_leading_dot() {
        let m = canonicalize_signature("<Demo: int f(byte[])>", SignatureFlavor::Soot).unwrap();
        assert_eq!(m, mref("", "Demo", "f", &["byte[]"]));
        assert_eq!(m.to_string(), "Demo.f(byte[])");
    }

    #[test]
    fn generics_are_erased_and_varargs_become_arrays() {
        let m = canonicalize_signature(
            "<p.Box: void put(java.util.Map<java.lang.String, java.lang.Integer>,int...)>",
            SignatureFlavor::Soot,
        )
        .unwrap();
        assert_eq!(m, mref("p", "Box", "put", &["java.util.Map", "int[]"]));
    }

    #[test]
    fn doop_uses_bracketed_grammar() {
        let m = canonicalize_signature(
            "<java.util.TimSort: void sort(java.lang.Object[],int)>",
            SignatureFlavor::Doop,
        )
        .unwrap();
        assert_eq!(m, mref("java.util", "TimSort", "sort", &["java.lang.Object[]", "int"]));
    }

    #[test]
    fn bare_dotted_placeholder_parses_in_every_flavor() {
        for flavor in [
            SignatureFlavor::Canonical,
            SignatureFlavor::Soot,
            SignatureFlavor::Wala,
            SignatureFlavor::Doop,
        ] {
            let m = canonicalize_signature("dummy.InvokeDynamic", flavor).unwrap();
            assert_eq!(m, mref("", "dummy", "InvokeDynamic", &[]));
        }
    }

    #[test]
    fn single_segment_bare_label_is_unparseable() {
        assert!(canonicalize_signature("main", SignatureFlavor::Canonical).is_err());
        assert!(canonicalize_signature("Cluster#3", SignatureFlavor::Canonical).is_err());
    }

    #[test]
    fn embedded_hash_suffix_is_scrubbed_from_method_name() {
        let m = canonicalize_signature("<example.Demo: void main_11a00961()>", SignatureFlavor::Soot)
            .unwrap();
        assert_eq!(m.method, "main");
    }

    #[test]
    fn whitespace_noise_is_tolerated() {
        let m = canonicalize_signature(
            "< example.Demo :  void  f( int ,  byte[] ) >",
            SignatureFlavor::Soot,
        );
        // leading space inside the brackets belongs to the class token
        assert!(m.is_ok());
        assert_eq!(m.unwrap(), mref("example", "Demo", "f", &["int", "byte[]"]));
    }

    #[test]
    fn render_round_trips_through_every_flavor() {
        let cases = [
            mref("example", "Demo", "main", &["java.lang.String[]"]),
            mref("", "Demo", "<clinit>", &[]),
            mref("a.b.c", "Cls$1", "lambda$run$0", &["int", "java.lang.Object"]),
            mref("p", "C", "<init>", &["double[][]", "boolean"]),
        ];
        for m in &cases {
            for flavor in [
                SignatureFlavor::Canonical,
                SignatureFlavor::Soot,
                SignatureFlavor::Wala,
                SignatureFlavor::Doop,
            ] {
                let rendered = render_signature(m, flavor);
                let back = canonicalize_signature(&rendered, flavor).unwrap();
                assert_eq!(&back, m, "round trip via {flavor}: {rendered}");
            }
        }
    }
}
