from pydantic import BaseModel, ConfigDict


class Model(BaseModel):
    """Immutable value type shared by all domain models.

    Instances are frozen after construction, so they can be handed to worker
    processes and threads without copying.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
