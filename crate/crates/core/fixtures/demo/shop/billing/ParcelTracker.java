package shop.billing;

import shop.shipping.Shipment;

public class ParcelTracker {
    private int registered;

    // @feature("delivery")
    public void register(Shipment shipment) {
        shipment.markDispatched();
        registered = registered + 1;
    }

    // @feature("delivery")
    public String status(Shipment shipment) {
        if (shipment.isDispatched()) {
            return "in transit to " + shipment.destination();
        }
        return "waiting";
    }
}
