// client-side validation against the schema file shared with the backend.
// Submissions that would fail server-side validation never leave the browser.

import schema from "../../src/srcsent/schemas/annotation_record.json";

type Schema = {
  required?: string[];
  additionalProperties?: boolean;
  properties?: Record<string, FieldSchema>;
};

type FieldSchema = {
  type?: string;
  minLength?: number;
  minItems?: number;
  enum?: unknown[];
  items?: FieldSchema;
};

export const annotationSchema = schema as Schema;

function checkValue(value: unknown, field: FieldSchema): string | null {
  if (field.type === "string") {
    if (typeof value !== "string") return "must be a string";
    if (value.length < (field.minLength ?? 0)) return "must not be empty";
  } else if (field.type === "integer") {
    if (typeof value !== "number" || !Number.isInteger(value)) return "must be an integer";
  } else if (field.type === "array") {
    if (!Array.isArray(value)) return "must be an array";
    if (value.length < (field.minItems ?? 0)) return "must not be empty";
    if (field.items) {
      for (let i = 0; i < value.length; i++) {
        const message = checkValue(value[i], field.items);
        if (message) return `item ${i}: ${message}`;
      }
    }
  }
  if (field.enum && !field.enum.includes(value as never)) {
    return `must be one of ${field.enum.map((v) => JSON.stringify(v)).join(", ")}`;
  }
  return null;
}

export function validateAnnotation(payload: unknown): Record<string, string> {
  const errors: Record<string, string> = {};
  if (typeof payload !== "object" || payload === null || Array.isArray(payload)) {
    return { _: "payload must be an object" };
  }
  const obj = payload as Record<string, unknown>;
  for (const name of annotationSchema.required ?? []) {
    if (!(name in obj)) errors[name] = "field is required";
  }
  if (annotationSchema.additionalProperties === false) {
    for (const name of Object.keys(obj)) {
      if (!(name in (annotationSchema.properties ?? {}))) errors[name] = "unknown field";
    }
  }
  for (const [name, field] of Object.entries(annotationSchema.properties ?? {})) {
    if (name in obj && !(name in errors)) {
      const message = checkValue(obj[name], field);
      if (message) errors[name] = message;
    }
  }
  return errors;
}
