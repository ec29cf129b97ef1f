/** Tiny DOM construction helpers shared by the tab renderers. */

export type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function option(value: string, label?: string, selected = false): HTMLOptionElement {
  const node = el("option", { value }, [label ?? value]);
  if (selected) {
    node.selected = true;
  }
  return node;
}

export function select(
  values: Array<{ value: string; label?: string }>,
  current: string,
  onChange: (value: string) => void,
): HTMLSelectElement {
  const node = el("select");
  for (const { value, label } of values) {
    node.append(option(value, label, value === current));
  }
  node.addEventListener("change", () => onChange(node.value));
  return node;
}

export function labeled(text: string, control: HTMLElement): HTMLLabelElement {
  return el("label", { class: "control" }, [
    el("span", {}, [text]),
    control,
  ]);
}
